#pragma once

#include <map>
#include <string>
#include <vector>

#include "ccsv/lts.hpp"

namespace ccsv {

using Renaming = std::map<std::string, std::string>;

// a.P — fresh initial state with a single a-transition into the old initial.
Lts prefix(const Action& a, const Lts& p);

// The empty process 0.
Lts nil();

// P1 + P2 — fresh initial state copying both old initials' outgoing
// transitions; the old initial states are kept (possibly unreachable).
// State-id clashes between the operands are resolved by renaming p2's states.
Lts choice(const Lts& p1, const Lts& p2);

// P1 | P2 — product states "⟨s,t⟩", interleavings plus one tau transition per
// complementary pair.
Lts parallel(const Lts& p1, const Lts& p2);

// P \ L — keep a transition iff its label is tau or its name is not in L.
Lts restrict(const Lts& p, const std::set<std::string>& L);

// P[f] — rename label names through f (identity for unlisted names).
Lts rename(const Lts& p, const Renaming& f);

// One summand of the head normal form of (P1[f1] | ... | Pn[fn]) \ L:
// either a single component's initial move (already renamed) or a handshake
// tau advancing two components.
struct ExpandSummand {
    Action act;
    // (component index, state that component advances to); one entry for a
    // plain move, two for a handshake.
    std::vector<std::pair<std::size_t, std::string>> moves;
};

// Head-normal-form summands per the expansion theorem (renamed/restricted
// form): component moves whose renamed label is tau or not restricted, plus
// handshakes between components with complementary renamed labels.
std::vector<ExpandSummand> expand(const std::vector<std::pair<Lts, Renaming>>& terms,
                                  const std::set<std::string>& L);

// Builds the choice over a.(system with the advanced components) for each
// summand; strongly equivalent to the directly composed system.
Lts materialize_expansion(const std::vector<std::pair<Lts, Renaming>>& terms,
                          const std::set<std::string>& L,
                          const std::vector<ExpandSummand>& summands);

// hide(P, a1..ak) = (P | (a1's complement)* | ...) \ {a1..ak}: each hidden
// name is absorbed by a one-state partner cycling on the complement action.
Lts hide(const Lts& p, const std::vector<Action>& hidden);

// (a1 ... an)* — the n-state cycle executing the given actions in order.
Lts star(const std::vector<Action>& actions);

}  // namespace ccsv
