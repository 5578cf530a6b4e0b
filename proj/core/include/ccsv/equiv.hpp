#pragma once

#include <optional>
#include <string>

#include "ccsv/lts.hpp"

namespace ccsv {

enum class EquivKind { Strong, Weak, Congruence, TraceLanguage, ChoiceTrace };
enum class RelationKind { BS, OBS, OBSplus, BSmodStrong, OBSmodStrong, OBSmodWeak };

// One application of the matching operator: the pairs of mu whose every
// transition on either side can be answered by the other side per the strong
// (resp. observational, with tau*-closure) conditions, with the targets
// checked against mu.
Relation refine_step(const Lts& p1, const Lts& p2, const Relation& mu, bool weak);

// Greatest (observational) bisimilarity mu(P1,P2) / mu_tau(P1,P2): iterate
// refine_step from the full relation S1 x S2 until stable.
Relation greatest_bisim(const Lts& p1, const Lts& p2, bool weak);

// Decides the requested equivalence. Trace kinds use subset construction and
// refuse inputs beyond trace_bound states.
bool equivalent(const Lts& p1, const Lts& p2, EquivKind kind, std::size_t trace_bound = 64);

struct VerifyResult {
    bool ok = false;
    // First violating state pair when !ok (the initial pair for a failed
    // membership / root condition).
    std::optional<std::pair<std::string, std::string>> violating;
    std::string reason;
};

// Checks whether the user-supplied relation is a bisimulation of the given
// kind between p1 and p2 (including the initial-pair condition; the "mod"
// variants close the relation with precomputed strong/weak bisimilarity on
// each side before matching).
VerifyResult verify_relation(const Lts& p1, const Lts& p2, const Relation& r, RelationKind kind);

// All (s1, s2) pairs.
Relation full_relation(const Lts& p1, const Lts& p2);

// Per-state trace-language equality Tr_s(P1) = Tr_s'(P2), traces including
// tau as an ordinary symbol.
bool trace_equal_states(const Lts& p1, const std::string& s1, const Lts& p2,
                        const std::string& s2, std::size_t trace_bound = 64);

}  // namespace ccsv
