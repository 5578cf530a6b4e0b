#pragma once

#include <memory>
#include <vector>

#include "ccsv/algebra.hpp"
#include "ccsv/lts.hpp"

namespace ccsv {

enum class PeKind { Nil, Const, NameRef, Prefix, Choice, Par, Restrict, Rename };

struct ProcExpr;
using PePtr = std::shared_ptr<const ProcExpr>;

// Process expression. Const carries a label (for readable, reproducible state
// ids), a shared LTS and the current state of that LTS; all other payloads
// are per-kind.
struct ProcExpr {
    PeKind kind = PeKind::Nil;
    std::string label;                  // Const
    std::shared_ptr<const Lts> lts;     // Const
    std::string state;                  // Const: current state
    std::string name;                   // NameRef
    Action act;                         // Prefix
    PePtr a, b;                         // children
    std::set<std::string> restricted;   // Restrict
    Renaming renaming;                  // Rename

    static PePtr nil();
    static PePtr constant(std::string label, std::shared_ptr<const Lts> lts);
    static PePtr constant_at(std::string label, std::shared_ptr<const Lts> lts,
                             std::string state);
    static PePtr ref(std::string name);
    static PePtr prefix(const Action& act, PePtr p);
    static PePtr choice(PePtr l, PePtr r);
    static PePtr par(PePtr l, PePtr r);
    static PePtr restriction(PePtr p, std::set<std::string> names);
    static PePtr renaming_of(PePtr p, Renaming f);
};

// Canonical, unambiguous rendering; doubles as the structural-identity key
// during materialization.
std::string render(const PePtr& e);

// Recursive definition: ordered equations with distinct names; every NameRef
// used anywhere must be defined here.
struct RecDef {
    std::vector<std::pair<std::string, PePtr>> equations;

    const PePtr* lookup(const std::string& name) const;
    void validate() const;  // throws UndefinedNameError / Error on duplicates
};

// One-step successors per the SOS rules (constants step along their LTS,
// a.P -> P, choice, interleaving, handshake, restriction, renaming, and
// unfolding of defined names). Deterministically ordered.
std::vector<std::pair<Action, PePtr>> sos_step(const PePtr& e, const RecDef& env);

// BFS over sos_step with structural-identity interning of expressions.
Lts materialize(const PePtr& e, const RecDef& env, std::size_t max_states = 10000);
Lts materialize(const std::string& name, const RecDef& env, std::size_t max_states = 10000);

enum class Guardedness { CongruenceUnique, StrongUnique, None };

// StrongUnique: every name occurrence sits under some prefix (solution unique
// up to strong equivalence). CongruenceUnique: additionally some such prefix
// is non-tau and the occurrence appears under prefix/choice contexts only.
Guardedness guardedness(const RecDef& rd);

}  // namespace ccsv
