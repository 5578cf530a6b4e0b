#include "doctest.h"

#include "ccsv/equiv.hpp"
#include "ccsv/models.hpp"

using namespace ccsv;
using namespace ccsv::models;

TEST_CASE("registry lists models and builds them with defaults") {
    const auto& list = model_list();
    CHECK(list.size() >= 25);
    for (const auto& m : list) {
        CHECK_FALSE(m.name.empty());
        CHECK_FALSE(m.summary.empty());
    }

    BuiltModel job = build("jobshop", {});
    REQUIRE(job.lts.has_value());
    CHECK(job.lts->states.size() == 32);

    BuiltModel buf = build("buffer", {{"n", "2"}, {"messages", "2"}});
    REQUIRE(buf.vp.has_value());
    CHECK(buf.vp->states.size() == 1);

    CHECK_THROWS_AS((void)build("no-such-model", {}), UnknownModelError);
    CHECK_THROWS_AS((void)build("buffer", {{"n", "potato"}}), BadParamsError);
    CHECK_THROWS_AS((void)build("scheduler", {{"n", "9"}}), BadParamsError);
}

TEST_CASE("every registry entry builds with its defaults") {
    for (const auto& m : model_list()) {
        BuiltModel b = build(m.name, {});
        CHECK((b.lts.has_value() || b.vp.has_value()));
        if (b.lts) b.lts->validate();
        if (b.vp) b.vp->validate();
    }
}

TEST_CASE("jobshop composition facts") {
    Lts shop = jobshop();
    CHECK(shop.states.size() == 32);  // the full 4*4*2 product
    // The mallet channels are internal after restriction.
    auto names = names_of(act_of(shop));
    CHECK_FALSE(names.count("get_and_work"));
    CHECK_FALSE(names.count("put"));
}

TEST_CASE("scheduler round-robin grants in index order") {
    Lts sch = scheduler(2);
    Lts ref = scheduler_reference(2);
    CHECK(equivalent(sch, ref, EquivKind::Weak));
}

TEST_CASE("separation system retains the four composed control states") {
    VpProcess sys = separation_system({3}, {1, 2}, 1, 3);
    CHECK(sys.states ==
          std::set<std::string>{"Aa", "Ac", "Ca", "Cc"});
    CHECK(sys.initial == "Aa");
}

TEST_CASE("lts simulation is seed-deterministic and stops at deadlocks") {
    Lts p = vending_simple();
    SimResult r1 = simulate(p, 50, 42);
    SimResult r2 = simulate(p, 50, 42);
    CHECK(r1.trace == r2.trace);
    CHECK(r1.final_control == r2.final_control);

    Lts dead;
    dead.initial = "s";
    dead.add_transition("s", Action::tau(), "t");
    SimResult r3 = simulate(dead, 10, 1);
    CHECK(r3.deadlocked);
    CHECK(r3.trace.size() == 1);
    CHECK(r3.final_control == "t");
}

TEST_CASE("vp simulation walks enabled composite operators") {
    VpProcess cell = models::buf_cell(2);
    SimResult r = simulate(cell, 21, 7);
    CHECK(r.trace.size() == 21);
    CHECK_FALSE(r.deadlocked);
    // Strict In/Out alternation with matching values.
    for (std::size_t i = 0; i + 1 < r.trace.size(); i += 2) {
        CHECK(r.trace[i].kind == ActKind::InputV);
        CHECK(r.trace[i + 1].kind == ActKind::OutputV);
        CHECK(r.trace[i].value == r.trace[i + 1].value);
    }
    SimResult again = simulate(cell, 21, 7);
    CHECK(r.trace == again.trace);

    // An unsatisfiable initial condition is a parameter error.
    VpProcess broken = cell;
    broken.init = ve_bottom();
    CHECK_THROWS_AS((void)simulate(broken, 5, 1), BadParamsError);
}

TEST_CASE("sliding window fixtures have tractable composed sizes") {
    VpProcess gbn = swp_go_back_n(4);
    gbn.validate();
    CHECK(gbn.states.size() >= 4);
    VpProcess sr = swp_selective_repeat(4);
    sr.validate();
    CHECK(sr.transitions.size() > gbn.transitions.size());

    CHECK_THROWS_AS((void)swp_go_back_n(3), BadParamsError);
}
