#pragma once

#include <random>
#include <vector>

#include "ccsv/algebra.hpp"
#include "ccsv/equiv.hpp"
#include "ccsv/lts.hpp"

namespace ccsv::testing {

// Seeded random LTS: states s0..s{k-1} with s0 initial, up to three outgoing
// transitions per state over the given alphabet.
inline Lts random_lts(std::mt19937_64& rng, int max_states,
                      const std::vector<Action>& alphabet) {
    std::uniform_int_distribution<int> nstates(1, max_states);
    int k = nstates(rng);
    Lts p;
    p.initial = "s0";
    for (int i = 0; i < k; ++i) p.add_state("s" + std::to_string(i));
    std::uniform_int_distribution<int> ntrans(0, 3);
    std::uniform_int_distribution<int> target(0, k - 1);
    std::uniform_int_distribution<std::size_t> label(0, alphabet.size() - 1);
    for (int i = 0; i < k; ++i) {
        int t = ntrans(rng);
        for (int j = 0; j < t; ++j)
            p.add_transition("s" + std::to_string(i), alphabet[label(rng)],
                             "s" + std::to_string(target(rng)));
    }
    return p;
}

inline std::vector<Action> full_alphabet() {
    return {Action::tau(), Action::in("a"), Action::out("a"), Action::in("b"),
            Action::out("b")};
}

// Process equality as used by the algebraic laws: isomorphism of the
// reachable parts.
inline bool law_equal(const Lts& p1, const Lts& p2, std::size_t limit = 512) {
    return isomorphic(reachable_part(p1), reachable_part(p2), limit).has_value();
}

// a.P for a plain input action named `n`.
inline Lts pin(const std::string& n, const Lts& p) { return prefix(Action::in(n), p); }

}  // namespace ccsv::testing
