#include "doctest.h"

#include "ccsv/algebra.hpp"
#include "ccsv/equiv.hpp"
#include "ccsv/minimize.hpp"
#include "ccsv/models.hpp"

#include "helpers.hpp"

using namespace ccsv;
using namespace ccsv::testing;

TEST_CASE("quotient rejects non-equivalences and lifts transitions classwise") {
    Lts p;
    p.initial = "a";
    p.add_transition("a", Action::in("x"), "b");
    p.add_transition("a", Action::in("x"), "c");

    Relation uneven;
    uneven.pairs = {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"b", "c"}};  // not symmetric
    CHECK_THROWS_AS((void)quotient(p, uneven), NotAnEquivalenceError);

    Relation eq;
    eq.pairs = {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"b", "c"}, {"c", "b"}};
    Lts q = quotient(p, eq);
    CHECK(q.states.size() == 2);
    CHECK(q.transitions.size() == 1);
    CHECK(equivalent(p, q, EquivKind::Strong));
}

TEST_CASE("quotient by the greatest self-bisimulation is the strong minimization") {
    std::mt19937_64 rng(1010);
    auto alphabet = full_alphabet();
    for (int trial = 0; trial < 50; ++trial) {
        Lts p = reachable_part(random_lts(rng, 5, alphabet));
        Lts m1 = minimize(p, MinimizeKind::Strong);
        Lts m2 = quotient(p, greatest_bisim(p, p, false));
        CHECK(isomorphic(m1, m2, 64).has_value());
    }
}

TEST_CASE("minimize preserves the requested equivalence and is idempotent") {
    std::mt19937_64 rng(2020);
    auto alphabet = full_alphabet();
    for (int trial = 0; trial < 50; ++trial) {
        Lts p = random_lts(rng, 5, alphabet);
        struct Row {
            MinimizeKind mk;
            EquivKind ek;
        } rows[] = {{MinimizeKind::Strong, EquivKind::Strong},
                    {MinimizeKind::Weak, EquivKind::Weak},
                    {MinimizeKind::Congruence, EquivKind::Congruence}};
        for (const auto& row : rows) {
            Lts m = minimize(p, row.mk);
            CHECK(equivalent(p, m, row.ek));
            Lts mm = minimize(m, row.mk);
            CHECK(m.states.size() == mm.states.size());
        }
    }
}

TEST_CASE("minimal size: equivalent processes minimize to equal state counts") {
    std::mt19937_64 rng(3030);
    auto alphabet = full_alphabet();
    int hits = 0;
    for (int trial = 0; trial < 200; ++trial) {
        Lts p1 = random_lts(rng, 4, alphabet);
        Lts p2 = random_lts(rng, 4, alphabet);
        if (equivalent(p1, p2, EquivKind::Strong)) {
            ++hits;
            CHECK(minimize(p1, MinimizeKind::Strong).states.size() ==
                  minimize(p2, MinimizeKind::Strong).states.size());
        }
        if (equivalent(p1, p2, EquivKind::Weak))
            CHECK(minimize(p1, MinimizeKind::Weak).states.size() ==
                  minimize(p2, MinimizeKind::Weak).states.size());
    }
    CHECK(hits > 0);
}

TEST_CASE("weak minimization collapses tau chains") {
    Lts p = prefix(Action::tau(), prefix(Action::tau(), pin("a", nil())));
    Lts m = minimize(p, MinimizeKind::Weak);
    CHECK(m.states.size() == 2);
    CHECK(equivalent(m, pin("a", nil()), EquivKind::Weak));
}

TEST_CASE("jobshop minimizes to three states under weak equivalence") {
    Lts m = minimize(models::jobshop(), MinimizeKind::Weak);
    CHECK(m.states.size() == 3);
}
