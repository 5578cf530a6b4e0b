#include "doctest.h"

#include "ccsv/calc.hpp"
#include "ccsv/equiv.hpp"

#include "helpers.hpp"

using namespace ccsv;
using namespace ccsv::testing;

namespace {

PePtr pe_in(const std::string& n, PePtr p) {
    return ProcExpr::prefix(Action::in(n), std::move(p));
}

}  // namespace

TEST_CASE("sos_step implements the structural rules") {
    RecDef env;

    // Prefix.
    auto steps = sos_step(pe_in("a", ProcExpr::nil()), env);
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].first == Action::in("a"));

    // Choice offers both branches.
    auto c = ProcExpr::choice(pe_in("a", ProcExpr::nil()), pe_in("b", ProcExpr::nil()));
    CHECK(sos_step(c, env).size() == 2);

    // Parallel: interleavings plus the handshake.
    auto par = ProcExpr::par(pe_in("a", ProcExpr::nil()),
                             ProcExpr::prefix(Action::out("a"), ProcExpr::nil()));
    auto psteps = sos_step(par, env);
    REQUIRE(psteps.size() == 3);
    int taus = 0;
    for (const auto& [a, _] : psteps) taus += a.is_tau();
    CHECK(taus == 1);

    // Restriction keeps tau and unrestricted labels only.
    auto res = ProcExpr::restriction(par, {"a"});
    auto rsteps = sos_step(res, env);
    REQUIRE(rsteps.size() == 1);
    CHECK(rsteps[0].first.is_tau());

    // Renaming maps the label.
    auto ren = ProcExpr::renaming_of(pe_in("a", ProcExpr::nil()), {{"a", "z"}});
    auto nsteps = sos_step(ren, env);
    REQUIRE(nsteps.size() == 1);
    CHECK(nsteps[0].first == Action::in("z"));
}

TEST_CASE("constants step along their underlying system") {
    Lts cyc = star({Action::out("p"), Action::out("q")});
    auto shared = std::make_shared<const Lts>(cyc);
    RecDef env;
    auto steps = sos_step(ProcExpr::constant("C", shared), env);
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].first == Action::out("p"));

    Lts m = materialize(ProcExpr::constant("C", shared), env);
    CHECK(isomorphic(m, cyc).has_value());
}

TEST_CASE("recursive definitions materialize to their unique solutions") {
    RecDef env;
    env.equations.push_back({"A", pe_in("a", ProcExpr::ref("A"))});
    env.validate();
    Lts m = materialize("A", env);
    CHECK(m.states.size() == 1);
    REQUIRE(m.transitions.size() == 1);
    CHECK(m.transitions.begin()->act == Action::in("a"));

    // A two-name system: A = a.B, B = b.A.
    RecDef env2;
    env2.equations.push_back({"A", pe_in("a", ProcExpr::ref("B"))});
    env2.equations.push_back({"B", pe_in("b", ProcExpr::ref("A"))});
    Lts m2 = materialize("A", env2);
    CHECK(isomorphic(m2, star({Action::in("a"), Action::in("b")})).has_value());
}

TEST_CASE("materialize interns structurally identical expressions") {
    // A = a.(A + 0): the unfolded continuation recurs as the same expression,
    // so the traversal stays finite.
    RecDef env;
    env.equations.push_back(
        {"A", pe_in("a", ProcExpr::choice(ProcExpr::ref("A"), ProcExpr::nil()))});
    Lts m = materialize("A", env);
    CHECK(m.states.size() <= 3);
    CHECK(equivalent(m, materialize("A", env), EquivKind::Strong));
}

TEST_CASE("materialize enforces the state bound") {
    // A = a.(A | A) genuinely explodes.
    RecDef env;
    env.equations.push_back(
        {"A", pe_in("a", ProcExpr::par(ProcExpr::ref("A"), ProcExpr::ref("A")))});
    CHECK_THROWS_AS((void)materialize("A", env, 50), StateExplosionError);
}

TEST_CASE("undefined and duplicate names are rejected") {
    RecDef env;
    env.equations.push_back({"A", pe_in("a", ProcExpr::ref("NoSuch"))});
    CHECK_THROWS_AS(env.validate(), UndefinedNameError);

    RecDef dup;
    dup.equations.push_back({"A", ProcExpr::nil()});
    dup.equations.push_back({"A", ProcExpr::nil()});
    CHECK_THROWS_AS(dup.validate(), Error);
}

TEST_CASE("guardedness classification") {
    // A = a.A : congruence-unique.
    RecDef g1;
    g1.equations.push_back({"A", pe_in("a", ProcExpr::ref("A"))});
    CHECK(guardedness(g1) == Guardedness::CongruenceUnique);

    // A = tau.A : guarded but only by tau -> strong uniqueness only.
    RecDef g2;
    g2.equations.push_back({"A", ProcExpr::prefix(Action::tau(), ProcExpr::ref("A"))});
    CHECK(guardedness(g2) == Guardedness::StrongUnique);

    // A = A + a.0 : unguarded occurrence.
    RecDef g3;
    g3.equations.push_back(
        {"A", ProcExpr::choice(ProcExpr::ref("A"), pe_in("a", ProcExpr::nil()))});
    CHECK(guardedness(g3) == Guardedness::None);

    // A = a.(A | 0): guarded, but the occurrence sits under a parallel
    // context, so congruence uniqueness is not claimed.
    RecDef g4;
    g4.equations.push_back(
        {"A", pe_in("a", ProcExpr::par(ProcExpr::ref("A"), ProcExpr::nil()))});
    CHECK(guardedness(g4) == Guardedness::StrongUnique);
}

TEST_CASE("render is injective enough to serve as an interning key") {
    auto e1 = ProcExpr::choice(pe_in("a", ProcExpr::nil()), ProcExpr::ref("B"));
    auto e2 = ProcExpr::choice(pe_in("a", ProcExpr::nil()), ProcExpr::ref("B"));
    auto e3 = ProcExpr::choice(ProcExpr::ref("B"), pe_in("a", ProcExpr::nil()));
    CHECK(render(e1) == render(e2));
    CHECK(render(e1) != render(e3));
}
