#pragma once

#include <map>
#include <string>

#include "ccsv/calc.hpp"
#include "ccsv/hml.hpp"
#include "ccsv/lts.hpp"
#include "ccsv/vp.hpp"

namespace ccsv::io {

// ---------------------------------------------------------------------------
// .ccs — named agents over the process calculus
// ---------------------------------------------------------------------------
//
// file  := { "agent" Name "=" expr ";" }
// expr  := sum;  sum := par { "+" par };  par := pre { "|" pre }
// pre   := act "." pre | post;  post := atom { "\" "{" n, n "}" | "[" b/a "]" }
// atom  := "0" | Name | "(" expr ")";  act := "tau" | name "?" | name "!"
// Comments run from '#' to the end of the line.

RecDef parse_ccs(const std::string& text);

// The LTS printed as one agent equation per state; the initial state takes
// the given name, the others get numbered suffixes in lexicographic order.
std::string render_ccs(const Lts& p, const std::string& name);

// ---------------------------------------------------------------------------
// Modal formulas:  T  F  ~f  f & g  <a?>f  <a!>f  <tau>f  <tau+>f  (f)
// ---------------------------------------------------------------------------

FormulaPtr parse_formula(const std::string& text);

// ---------------------------------------------------------------------------
// .vpm — value-passing processes, one declaration per line
// ---------------------------------------------------------------------------
//
// type NAME = TYPE            TYPE := bool | int LO..HI | enum { "s", ... }
//                                   | list(TYPE, N) | NAME
// var X : TYPE
// init EXPR
// state S [init]
// trans S -> S' : [GUARD] ; OP ; ...   OP := n?x | n? | n!EXPR | n! | x := EXPR
//
// Expressions: integers, true, false, "symbol", variables, [const, ...],
// prefix !, infix * / + - / comparisons / & | =>, and the functions one,
// head, tail, len, maxl, minl, removeone, concat, idx, setidx, between,
// addmod, submod, frame, part.

VpProcess parse_vpm(const std::string& text);
std::string render_vpm(const VpProcess& p);
std::string render_expr(const VE& e);  // expression sub-syntax of .vpm

// ---------------------------------------------------------------------------
// .cert — observational-equivalence certificates
// ---------------------------------------------------------------------------
//
// left  file PATH | left  model NAME [k=v ...]
// right file PATH | right model NAME [k=v ...]
// mu S T : EXPR
// inv1 EXPR
// inv2 EXPR
// ctlen N
// match SIDE S T INDEX : [i j ...] [ ] ...
//
// A match line lists the answering side's composite transitions (sequences of
// its transition indices; an empty bracket pair is the stay-put answer) for
// transition INDEX of state pair (S, T) moved by SIDE (1 or 2).

struct CertFile {
    struct Side {
        bool from_file = false;  // file path vs registry model name
        std::string ref;
        std::map<std::string, std::string> params;  // registry parameters
    };
    Side left, right;
    MuCertificate cert;
};

CertFile parse_cert(const std::string& text);

// ---------------------------------------------------------------------------
// Graph dumps (states and transitions in lexicographic order)
// ---------------------------------------------------------------------------

std::string to_dot(const Lts& p, const std::string& name = "lts");
std::string to_json(const Lts& p);
std::string to_dot(const VpProcess& p, const std::string& name = "vp");
std::string to_json(const VpProcess& p);

}  // namespace ccsv::io
