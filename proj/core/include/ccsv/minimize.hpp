#pragma once

#include "ccsv/lts.hpp"

namespace ccsv {

enum class MinimizeKind { Strong, Weak, Congruence };

// Factor-process: states are the equivalence classes of eq (named after their
// lexicographically least member), the initial state is the class of the old
// initial, and transitions are lifted classwise. Throws NotAnEquivalenceError
// if eq is not reflexive/symmetric/transitive on states(p).
Lts quotient(const Lts& p, const Relation& eq);

// reachable_part followed by the quotient under the greatest strong (resp.
// observational) bisimilarity on the result; the output is equivalent to p
// under the requested relation and has the least possible number of states.
Lts minimize(const Lts& p, MinimizeKind kind);

}  // namespace ccsv
