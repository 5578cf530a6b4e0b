#include "doctest.h"

#include "ccsv/algebra.hpp"
#include "ccsv/equiv.hpp"

#include "helpers.hpp"

using namespace ccsv;
using namespace ccsv::testing;

TEST_CASE("prefix, nil and choice build the expected shapes") {
    Lts z = nil();
    CHECK(z.states.size() == 1);
    CHECK(z.transitions.empty());

    Lts p = pin("a", nil());
    CHECK(p.states.size() == 2);
    REQUIRE(p.transitions.size() == 1);
    CHECK(p.transitions.begin()->act == Action::in("a"));

    Lts q = choice(pin("a", nil()), pin("b", nil()));
    auto o = q.out(q.initial);
    REQUIRE(o.size() == 2);
    CHECK(o[0].act == Action::in("a"));
    CHECK(o[1].act == Action::in("b"));
}

TEST_CASE("parallel interleaves and synchronizes complementary pairs") {
    Lts l = prefix(Action::in("a"), nil());
    Lts r = prefix(Action::out("a"), nil());
    Lts p = parallel(l, r);
    auto o = p.out(p.initial);
    REQUIRE(o.size() == 3);  // a?, a!, and the handshake tau
    int taus = 0;
    for (const auto& t : o) taus += t.act.is_tau();
    CHECK(taus == 1);

    // Restricting the channel leaves only the handshake.
    Lts h = restrict(p, {"a"});
    auto ho = h.out(h.initial);
    REQUIRE(ho.size() == 1);
    CHECK(ho[0].act.is_tau());
}

TEST_CASE("restrict removes by name, rename maps names keeping direction") {
    Lts p = prefix(Action::in("a"), prefix(Action::out("b"), nil()));
    Lts q = restrict(p, {"b"});
    CHECK(reachable_part(q).transitions.size() == 1);

    Lts r = rename(p, {{"a", "x"}});
    std::set<Action> acts = act_of(r);
    CHECK(acts == std::set<Action>{Action::in("x"), Action::out("b")});
}

TEST_CASE("star cycles through its actions in order") {
    Lts s = star({Action::out("p"), Action::out("q")});
    CHECK(s.states.size() == 2);
    auto o = s.out(s.initial);
    REQUIRE(o.size() == 1);
    CHECK(o[0].act == Action::out("p"));
    auto o2 = s.out(o[0].dst);
    REQUIRE(o2.size() == 1);
    CHECK(o2[0].act == Action::out("q"));
    CHECK(o2[0].dst == s.initial);
}

TEST_CASE("hide turns the hidden actions into internal moves") {
    Lts p = star({Action::out("a"), Action::out("b")});
    Lts h = hide(p, {Action::out("b")});
    CHECK(equivalent(h, star({Action::out("a")}), EquivKind::Weak));
    CHECK_FALSE(equivalent(h, star({Action::out("a")}), EquivKind::Strong));
}

TEST_CASE("expansion summands materialize to a strongly equivalent system") {
    std::mt19937_64 rng(20240817);
    auto alphabet = full_alphabet();
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::pair<Lts, Renaming>> terms;
        int n = 2 + static_cast<int>(rng() % 2);
        for (int i = 0; i < n; ++i)
            terms.emplace_back(random_lts(rng, 3, alphabet), Renaming{{"b", "a"}});
        std::set<std::string> L = {"a"};

        Lts direct;
        bool first = true;
        for (const auto& [p, f] : terms) {
            Lts renamed = rename(p, f);
            direct = first ? renamed : parallel(direct, renamed);
            first = false;
        }
        direct = restrict(direct, L);

        auto summands = expand(terms, L);
        Lts hnf = materialize_expansion(terms, L, summands);
        CHECK(equivalent(direct, hnf, EquivKind::Strong));
    }
}

TEST_CASE("single unrestricted component expands to its own initial moves") {
    Lts p = choice(pin("a", nil()), prefix(Action::tau(), nil()));
    auto summands = expand({{p, {}}}, {});
    REQUIRE(summands.size() == 2);
    for (const auto& s : summands) {
        CHECK(s.moves.size() == 1);
        CHECK(s.moves[0].first == 0);
    }
}

TEST_CASE("head normal form: sum of prefixed continuations is strongly equivalent") {
    std::mt19937_64 rng(424242);
    auto alphabet = full_alphabet();
    for (int trial = 0; trial < 100; ++trial) {
        Lts p = random_lts(rng, 5, alphabet);
        Lts hnf = nil();
        bool first = true;
        for (const auto& t : p.out(p.initial)) {
            Lts cont = p;
            cont.initial = t.dst;
            Lts summand = prefix(t.act, cont);
            hnf = first ? summand : choice(hnf, summand);
            first = false;
        }
        CHECK(equivalent(p, hnf, EquivKind::Strong));
    }
}

TEST_CASE("choice is neutral and idempotent up to strong equivalence") {
    std::mt19937_64 rng(77);
    auto alphabet = full_alphabet();
    for (int trial = 0; trial < 100; ++trial) {
        Lts p = random_lts(rng, 5, alphabet);
        CHECK(equivalent(choice(p, nil()), p, EquivKind::Strong));
        CHECK(equivalent(choice(p, p), p, EquivKind::Strong));
    }
}
