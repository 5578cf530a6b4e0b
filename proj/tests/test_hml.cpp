#include "doctest.h"

#include "ccsv/algebra.hpp"
#include "ccsv/equiv.hpp"
#include "ccsv/hml.hpp"
#include "ccsv/io.hpp"

#include "helpers.hpp"

using namespace ccsv;
using namespace ccsv::testing;

namespace {

FormulaPtr dia_in(const std::string& n, FormulaPtr f) {
    return Formula::diamond(Action::in(n), std::move(f));
}

}  // namespace

TEST_CASE("formula construction, rendering and the tau+ nesting rule") {
    FormulaPtr f = Formula::conj(dia_in("a", Formula::top()),
                                 Formula::negate(Formula::bottom()));
    CHECK(render(f) == "(<a?>T & ~F)");
    CHECK_FALSE(contains_tau_plus(f));

    FormulaPtr g = Formula::diamond_tau_plus(Formula::top());
    CHECK(render(g) == "<tau+>T");
    CHECK(contains_tau_plus(g));
    CHECK_THROWS_AS((void)Formula::diamond_tau_plus(g), Error);
    CHECK_THROWS_AS((void)Formula::diamond(Action::inv("a", "1"), Formula::top()), Error);
}

TEST_CASE("strong semantics distinguishes the branching pair") {
    Lts p1 = pin("a", choice(pin("b", nil()), pin("c", nil())));
    Lts p2 = choice(pin("a", pin("b", nil())), pin("a", pin("c", nil())));
    FormulaPtr phi =
        dia_in("a", Formula::conj(dia_in("b", Formula::top()), dia_in("c", Formula::top())));
    CHECK(eval(p1, phi, Semantics::Strong));
    CHECK_FALSE(eval(p2, phi, Semantics::Strong));
}

TEST_CASE("weak semantics reads diamonds over tau closures") {
    // 0+a.0 vs tau.0+a.0, told apart by ~<tau>~<a?>T.
    Lts left = choice(nil(), pin("a", nil()));
    Lts right = choice(prefix(Action::tau(), nil()), pin("a", nil()));
    FormulaPtr f1 = Formula::negate(
        Formula::diamond(Action::tau(), Formula::negate(dia_in("a", Formula::top()))));
    CHECK(eval(left, f1, Semantics::Weak));
    CHECK_FALSE(eval(right, f1, Semantics::Weak));

    // a.0+b.0 vs tau.a.0+tau.b.0, told apart by <tau>~<a?>T.
    Lts l2 = choice(pin("a", nil()), pin("b", nil()));
    Lts r2 = choice(prefix(Action::tau(), pin("a", nil())),
                    prefix(Action::tau(), pin("b", nil())));
    FormulaPtr f2 =
        Formula::diamond(Action::tau(), Formula::negate(dia_in("a", Formula::top())));
    CHECK_FALSE(eval(l2, f2, Semantics::Weak));
    CHECK(eval(r2, f2, Semantics::Weak));

    // Weak <a> sees through leading taus.
    Lts deep = prefix(Action::tau(), pin("a", nil()));
    CHECK(eval(deep, dia_in("a", Formula::top()), Semantics::Weak));
    CHECK_FALSE(eval(deep, dia_in("a", Formula::top()), Semantics::Strong));
}

TEST_CASE("plus semantics: <tau+> needs at least one internal step") {
    Lts tz = prefix(Action::tau(), nil());
    FormulaPtr f = Formula::diamond_tau_plus(Formula::top());
    CHECK(eval(tz, f, Semantics::Plus));
    CHECK_FALSE(eval(nil(), f, Semantics::Plus));
    CHECK_THROWS_AS((void)eval(tz, f, Semantics::Weak), SemanticsMismatchError);
    CHECK_THROWS_AS((void)eval(tz, f, Semantics::Strong), SemanticsMismatchError);
}

TEST_CASE("eval_at rejects unknown states") {
    Lts p = pin("a", nil());
    CHECK_THROWS_AS((void)eval_at(p, "ghost", Formula::top(), Semantics::Strong),
                    UnknownStateError);
}

TEST_CASE("distinguish returns a formula iff the checker says inequivalent") {
    std::mt19937_64 rng(112358);
    auto alphabet = full_alphabet();
    struct Row {
        Semantics sem;
        EquivKind kind;
    } rows[] = {{Semantics::Strong, EquivKind::Strong},
                {Semantics::Weak, EquivKind::Weak},
                {Semantics::Plus, EquivKind::Congruence}};
    for (int trial = 0; trial < 100; ++trial) {
        Lts p1 = random_lts(rng, 4, alphabet);
        Lts p2 = random_lts(rng, 4, alphabet);
        for (const auto& row : rows) {
            auto phi = distinguish(p1, p2, row.sem);
            CHECK(phi.has_value() != equivalent(p1, p2, row.kind));
            if (phi) {
                CHECK(eval(p1, *phi, row.sem) != eval(p2, *phi, row.sem));
                // The rendered formula parses back to the same evaluation.
                FormulaPtr reparsed = io::parse_formula(render(*phi));
                CHECK(eval(p1, reparsed, row.sem) == eval(p1, *phi, row.sem));
            }
        }
    }
}
