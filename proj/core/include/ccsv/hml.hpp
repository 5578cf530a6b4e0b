#pragma once

#include <memory>
#include <optional>

#include "ccsv/lts.hpp"

namespace ccsv {

enum class FmKind { Top, Bottom, Not, And, Diamond, DiamondTauPlus };

// Hennessy-Milner formula tree. DiamondTauPlus is the one-level extension
// characterizing observational congruence; it may not be nested.
struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    FmKind kind;
    Action act;       // Diamond only
    FormulaPtr a, b;  // Not/Diamond/DiamondTauPlus use a; And uses a and b

    static FormulaPtr top();
    static FormulaPtr bottom();
    static FormulaPtr negate(FormulaPtr f);
    static FormulaPtr conj(FormulaPtr l, FormulaPtr r);
    static FormulaPtr diamond(const Action& act, FormulaPtr f);
    static FormulaPtr diamond_tau_plus(FormulaPtr f);  // throws on nested tau+
};

bool contains_tau_plus(const FormulaPtr& f);
std::string render(const FormulaPtr& f);

enum class Semantics { Strong, Weak, Plus };

// Value of the formula at one state / at the initial state. Weak semantics
// reads <tau> over tau*-reachability and <a> over tau* a tau* moves; Plus
// additionally gives <tau+> (at least one tau step) and is required whenever
// the formula contains it.
bool eval_at(const Lts& p, const std::string& s, const FormulaPtr& phi, Semantics sem);
bool eval(const Lts& p, const FormulaPtr& phi, Semantics sem);

// A formula telling the two processes apart under the given semantics, or
// absent iff they are strongly/observationally equivalent resp. congruent.
// Every returned formula is re-evaluated on both inputs before returning.
std::optional<FormulaPtr> distinguish(const Lts& p1, const Lts& p2, Semantics sem);

}  // namespace ccsv
