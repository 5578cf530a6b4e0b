// Acceptance suite: fourteen end-to-end criteria, each printing one
// "ACn PASS" / "ACn FAIL" line. Every numeric bound and tolerance used by a
// criterion is written literally at its point of use.

#include "doctest.h"

#include <exception>
#include <iostream>
#include <map>
#include <random>

#include "ccsv/algebra.hpp"
#include "ccsv/equiv.hpp"
#include "ccsv/frames.hpp"
#include "ccsv/hml.hpp"
#include "ccsv/minimize.hpp"
#include "ccsv/models.hpp"
#include "ccsv/vp.hpp"

#include "helpers.hpp"

using namespace ccsv;
using namespace ccsv::testing;

namespace {

// Prints the criterion verdict when the test scope unwinds (REQUIRE failures
// propagate as exceptions).
struct Verdict {
    std::string tag;
    explicit Verdict(std::string t) : tag(std::move(t)) {}
    ~Verdict() {
        std::cout << tag << (std::uncaught_exceptions() ? " FAIL" : " PASS") << std::endl;
    }
};

Lts conc(const VpProcess& p) { return reachable_part(concretize(p)); }

std::vector<Action> out_acts(const std::vector<std::string>& names) {
    std::vector<Action> v;
    for (const auto& n : names) v.push_back(Action::out(n));
    return v;
}

}  // namespace

TEST_CASE("AC1: jobshop has 32 states and weakly reduces to the abstract shop") {
    Verdict v("AC1");
    Lts shop = models::jobshop();
    REQUIRE(shop.states.size() == 32);

    Lts m = minimize(shop, MinimizeKind::Weak);
    REQUIRE(m.states.size() == 3);
    REQUIRE(isomorphic(m, minimize(models::abs_jobshop(), MinimizeKind::Weak)).has_value());

    REQUIRE(equivalent(shop, models::abs_jobshop(), EquivKind::Weak));
    REQUIRE(equivalent(shop, models::abs_jobshop(), EquivKind::Congruence));
}

TEST_CASE("AC2: dispatcher system is congruent to tau.Spec and weakly equal to Spec") {
    Verdict v("AC2");
    for (int n : {2, 3}) {
        Lts sys = models::dispatcher_system(n);
        Lts spec = models::dispatcher_spec();
        REQUIRE(equivalent(sys, prefix(Action::tau(), spec), EquivKind::Congruence));
        REQUIRE(equivalent(sys, spec, EquivKind::Weak));
    }
}

TEST_CASE("AC3: scheduler meets its liveness and per-client specifications") {
    Verdict v("AC3");
    for (int n : {2, 3}) {
        Lts sch = models::scheduler(n);

        std::vector<std::string> alphas, betas;
        for (int i = 1; i <= n; ++i) {
            alphas.push_back("a" + std::to_string(i));
            betas.push_back("b" + std::to_string(i));
        }
        REQUIRE(equivalent(hide(sch, out_acts(betas)), star(out_acts(alphas)),
                           EquivKind::Weak));

        for (int i = 1; i <= n; ++i) {
            std::vector<std::string> others;
            for (int j = 1; j <= n; ++j)
                if (j != i) {
                    others.push_back("a" + std::to_string(j));
                    others.push_back("b" + std::to_string(j));
                }
            Lts per = hide(sch, out_acts(others));
            Lts spec = star(out_acts({"a" + std::to_string(i), "b" + std::to_string(i)}));
            REQUIRE(equivalent(per, spec, EquivKind::Weak));
        }
    }
    REQUIRE(equivalent(models::scheduler(2), models::scheduler_reference(2),
                       EquivKind::Weak));
}

TEST_CASE("AC4: semaphore system is congruent to the tau-prefixed session sum") {
    Verdict v("AC4");
    std::vector<std::vector<std::string>> sessions = {{"a11", "a12"}, {"a21", "a22"}};
    REQUIRE(equivalent(models::semaphore_system(sessions),
                       models::semaphore_spec(sessions), EquivKind::Congruence));
}

TEST_CASE("AC5: the equivalence pair table holds verbatim") {
    Verdict v("AC5");
    Lts bc = pin("a", choice(pin("b", nil()), pin("c", nil())));
    Lts b_c = choice(pin("a", pin("b", nil())), pin("a", pin("c", nil())));
    REQUIRE(equivalent(bc, b_c, EquivKind::TraceLanguage));
    REQUIRE_FALSE(equivalent(bc, b_c, EquivKind::ChoiceTrace));
    REQUIRE_FALSE(equivalent(bc, b_c, EquivKind::Strong));

    REQUIRE(equivalent(pin("a", choice(pin("b", nil()), pin("b", nil()))),
                       choice(pin("a", pin("b", nil())), pin("a", pin("b", nil()))),
                       EquivKind::Strong));

    Lts p = pin("a", pin("b", nil()));
    REQUIRE(equivalent(p, prefix(Action::tau(), p), EquivKind::Weak));

    REQUIRE_FALSE(equivalent(choice(nil(), pin("a", nil())),
                             choice(prefix(Action::tau(), nil()), pin("a", nil())),
                             EquivKind::Weak));

    REQUIRE(equivalent(pin("a", prefix(Action::tau(), nil())), pin("a", nil()),
                       EquivKind::Congruence));

    Lts tz = prefix(Action::tau(), nil());
    REQUIRE_FALSE(equivalent(tz, nil(), EquivKind::Congruence));
    REQUIRE(equivalent(tz, nil(), EquivKind::Weak));
}

TEST_CASE("AC6: modal formulas witness exactly the checker verdicts") {
    Verdict v("AC6");

    // <a>(<b>T & <c>T) separates the trace-equal branching pair.
    Lts p1 = pin("a", choice(pin("b", nil()), pin("c", nil())));
    Lts p2 = choice(pin("a", pin("b", nil())), pin("a", pin("c", nil())));
    FormulaPtr phi = Formula::diamond(
        Action::in("a"), Formula::conj(Formula::diamond(Action::in("b"), Formula::top()),
                                       Formula::diamond(Action::in("c"), Formula::top())));
    REQUIRE(eval(p1, phi, Semantics::Strong));
    REQUIRE_FALSE(eval(p2, phi, Semantics::Strong));

    // ~<tau>~<a>T separates 0+a.0 from tau.0+a.0 under the weak semantics.
    FormulaPtr f1 = Formula::negate(Formula::diamond(
        Action::tau(), Formula::negate(Formula::diamond(Action::in("a"), Formula::top()))));
    Lts l1 = choice(nil(), pin("a", nil()));
    Lts r1 = choice(prefix(Action::tau(), nil()), pin("a", nil()));
    REQUIRE(eval(l1, f1, Semantics::Weak));
    REQUIRE_FALSE(eval(r1, f1, Semantics::Weak));

    // <tau>~<a>T separates a.0+b.0 from tau.a.0+tau.b.0.
    FormulaPtr f2 = Formula::diamond(
        Action::tau(), Formula::negate(Formula::diamond(Action::in("a"), Formula::top())));
    Lts l2 = choice(pin("a", nil()), pin("b", nil()));
    Lts r2 = choice(prefix(Action::tau(), pin("a", nil())),
                    prefix(Action::tau(), pin("b", nil())));
    REQUIRE_FALSE(eval(l2, f2, Semantics::Weak));
    REQUIRE(eval(r2, f2, Semantics::Weak));

    // 500 random pairs: a distinguishing formula exists iff the checker says
    // the processes differ, under all three semantics; every returned formula
    // re-evaluates to disagreement.
    std::mt19937_64 rng(2026'08'23);
    auto alphabet = full_alphabet();
    struct Row {
        Semantics sem;
        EquivKind kind;
    } rows[] = {{Semantics::Strong, EquivKind::Strong},
                {Semantics::Weak, EquivKind::Weak},
                {Semantics::Plus, EquivKind::Congruence}};
    for (int trial = 0; trial < 500; ++trial) {
        Lts a = random_lts(rng, 5, alphabet);
        Lts b = random_lts(rng, 5, alphabet);
        for (const auto& row : rows) {
            auto f = distinguish(a, b, row.sem);
            REQUIRE(f.has_value() != equivalent(a, b, row.kind));
            if (f) REQUIRE(eval(a, *f, row.sem) != eval(b, *f, row.sem));
        }
    }
}

TEST_CASE("AC7: the fixpoint equals the union of self-refining relations") {
    Verdict v("AC7");
    std::mt19937_64 rng(7070);
    std::vector<Action> alphabet = {Action::tau(), Action::in("a")};  // two actions
    for (int trial = 0; trial < 200; ++trial) {
        Lts p1 = random_lts(rng, 3, alphabet);
        Lts p2 = random_lts(rng, 3, alphabet);
        Relation full = full_relation(p1, p2);
        std::vector<std::pair<std::string, std::string>> all(full.pairs.begin(),
                                                             full.pairs.end());
        REQUIRE(all.size() <= 9);

        for (bool weak : {false, true}) {
            // Exhaustive union of every relation R with R included in its own
            // refinement.
            Relation uni;
            for (std::size_t mask = 0; mask < (std::size_t{1} << all.size()); ++mask) {
                Relation r;
                for (std::size_t i = 0; i < all.size(); ++i)
                    if (mask >> i & 1) r.pairs.insert(all[i]);
                Relation refined = refine_step(p1, p2, r, weak);
                bool self_refining = true;
                for (const auto& pr : r.pairs)
                    if (!refined.pairs.count(pr)) self_refining = false;
                if (self_refining)
                    uni.pairs.insert(r.pairs.begin(), r.pairs.end());
            }
            REQUIRE(uni == greatest_bisim(p1, p2, weak));

            // Iteration count from the full relation stays within |S1|*|S2|.
            Relation mu = full_relation(p1, p2);
            std::size_t shrinks = 0;
            while (true) {
                Relation next = refine_step(p1, p2, mu, weak);
                if (next == mu) break;
                ++shrinks;
                mu = next;
            }
            REQUIRE(shrinks <= p1.states.size() * p2.states.size());
        }
    }
}

TEST_CASE("AC8: algebraic laws and tau-laws hold on 500 random systems each") {
    Verdict v("AC8");
    std::mt19937_64 rng(8080);
    auto alphabet = full_alphabet();
    auto name_of = [](const Renaming& f, const std::string& n) {
        auto it = f.find(n);
        return it == f.end() ? n : it->second;
    };

    for (int trial = 0; trial < 500; ++trial) {
        Lts p = random_lts(rng, 5, alphabet);
        Lts q = random_lts(rng, 5, alphabet);
        Lts small1 = random_lts(rng, 3, alphabet);
        Lts small2 = random_lts(rng, 3, alphabet);
        Lts small3 = random_lts(rng, 3, alphabet);
        std::set<std::string> L = {"a"};
        Renaming f = {{"a", "c"}, {"b", "d"}};

        // 1-4: associativity and commutativity of choice and parallel.
        REQUIRE(law_equal(choice(choice(p, q), small1), choice(p, choice(q, small1))));
        REQUIRE(law_equal(parallel(parallel(small1, small2), small3),
                          parallel(small1, parallel(small2, small3))));
        REQUIRE(law_equal(choice(p, q), choice(q, p)));
        REQUIRE(law_equal(parallel(small1, small2), parallel(small2, small1)));

        // 5: the empty process is neutral for parallel (and, up to strong
        // equivalence, for choice; idempotence likewise).
        REQUIRE(law_equal(parallel(p, nil()), p));
        REQUIRE(equivalent(choice(p, nil()), p, EquivKind::Strong));
        REQUIRE(equivalent(choice(p, p), p, EquivKind::Strong));

        // 6-8: restriction and renaming on 0; vacuous restriction.
        REQUIRE(law_equal(restrict(nil(), L), nil()));
        REQUIRE(law_equal(rename(nil(), f), nil()));
        REQUIRE(law_equal(restrict(p, {"zz"}), p));

        // 9: prefix under restriction, all three label cases.
        REQUIRE(law_equal(restrict(pin("a", p), L), nil()));
        REQUIRE(law_equal(restrict(pin("b", p), L), pin("b", restrict(p, L))));
        REQUIRE(law_equal(restrict(prefix(Action::tau(), p), L),
                          prefix(Action::tau(), restrict(p, L))));

        // 10: restriction distributes over choice.
        REQUIRE(law_equal(restrict(choice(p, q), L),
                          choice(restrict(p, L), restrict(q, L))));

        // 11: restriction distributes over parallel when no restricted name
        // is a handshake channel between the operands.
        {
            std::set<Action> ghost = act_of(small1);
            std::set<Action> shared;
            for (const auto& a : act_of(small2)) {
                Action c = complement(a);
                if (ghost.count(c)) shared.insert(c);
            }
            std::set<std::string> banned = names_of(shared);
            for (const std::string& n : {std::string("a"), std::string("b")})
                if (!banned.count(n))
                    REQUIRE(law_equal(restrict(parallel(small1, small2), {n}),
                                      parallel(restrict(small1, {n}),
                                               restrict(small2, {n}))));
        }

        // 12: stacked restrictions merge.
        REQUIRE(law_equal(restrict(restrict(p, {"a"}), {"b"}), restrict(p, {"a", "b"})));

        // 13: restriction commutes with renaming through the preimage.
        {
            std::set<std::string> Lr = {"c"};
            std::set<std::string> pre;
            for (const std::string& n : {std::string("a"), std::string("b"),
                                         std::string("c"), std::string("d")})
                if (Lr.count(name_of(f, n))) pre.insert(n);
            REQUIRE(law_equal(restrict(rename(p, f), Lr), rename(restrict(p, pre), f)));
        }

        // 14-15: identity renaming; renamings agreeing on the used names.
        REQUIRE(law_equal(rename(p, {}), p));
        {
            Renaming g = f;
            g["zz"] = "qq";  // differs only outside names(Act(p))
            REQUIRE(law_equal(rename(p, f), rename(p, g)));
        }

        // 16-17: renaming of prefix and choice.
        REQUIRE(law_equal(rename(pin("a", p), f), pin("c", rename(p, f))));
        REQUIRE(law_equal(rename(prefix(Action::tau(), p), f),
                          prefix(Action::tau(), rename(p, f))));
        REQUIRE(law_equal(rename(choice(p, q), f), choice(rename(p, f), rename(q, f))));

        // 18: renaming distributes over parallel for injective renamings.
        REQUIRE(law_equal(rename(parallel(small1, small2), f),
                          parallel(rename(small1, f), rename(small2, f))));

        // 19: injective renaming commutes with restriction.
        {
            Renaming perm = {{"a", "b"}, {"b", "a"}};
            REQUIRE(law_equal(rename(restrict(p, {"a"}), perm),
                              restrict(rename(p, perm), {"b"})));
        }

        // 20: composition of renamings.
        {
            Renaming g = {{"c", "e"}, {"d", "e"}};
            Renaming gof;
            for (const std::string& n : {std::string("a"), std::string("b"),
                                         std::string("c"), std::string("d")})
                gof[n] = name_of(g, name_of(f, n));
            REQUIRE(law_equal(rename(rename(p, f), g), rename(p, gof)));
        }
    }

    // tau-laws, checked through the congruence decision procedure.
    for (int trial = 0; trial < 500; ++trial) {
        Lts p = random_lts(rng, 5, alphabet);
        Lts p1 = random_lts(rng, 4, alphabet);
        Lts p2 = random_lts(rng, 4, alphabet);
        Action a = Action::in("a");
        REQUIRE(equivalent(prefix(a, prefix(Action::tau(), p)), prefix(a, p),
                           EquivKind::Congruence));
        REQUIRE(equivalent(choice(p, prefix(Action::tau(), p)), prefix(Action::tau(), p),
                           EquivKind::Congruence));
        Lts mixed = choice(p1, prefix(Action::tau(), p2));
        REQUIRE(equivalent(choice(prefix(a, mixed), prefix(a, p2)), prefix(a, mixed),
                           EquivKind::Congruence));
        Lts both = prefix(Action::tau(), choice(p1, p2));
        REQUIRE(equivalent(choice(p1, both), both, EquivKind::Congruence));
    }
}

TEST_CASE("AC9: buffers compose: certificates and concretization agree") {
    Verdict v("AC9");
    VpProcess b1 = models::buffer(1, 2);
    VpProcess cell = models::buf_cell(2);
    REQUIRE(equivalent(conc(b1), conc(cell), EquivKind::Weak));
    REQUIRE(verify_mu_certificate(b1, cell, models::buffer1_certificate()).ok);

    REQUIRE(equivalent(conc(models::buffer_chain(1, 1, 2)), conc(models::buffer(2, 2)),
                       EquivKind::Weak));
    REQUIRE(equivalent(conc(models::buffer_chain(1, 2, 2)), conc(models::buffer(3, 2)),
                       EquivKind::Weak));
}

TEST_CASE("AC10: the simple protocol fails, the alternating bit protocol works") {
    Verdict v("AC10");
    Lts cell = conc(models::buf_cell(2));
    REQUIRE_FALSE(equivalent(conc(models::simple_protocol()), cell, EquivKind::Weak));
    REQUIRE(equivalent(conc(models::abp_reduced()), cell, EquivKind::Weak));
    REQUIRE(verify_mu_certificate(models::abp_reduced(), models::buf_cell(2),
                                  models::abp_certificate())
                .ok);
}

TEST_CASE("AC11: set separation deadlocks exactly in the sorted configurations") {
    Verdict v("AC11");

    // Fixed instance U={3}, V={1,2}, weights 1..3.
    Lts fixed = conc(models::separation_system({3}, {1, 2}, 1, 3));
    std::set<std::string> controls;
    for (const auto& s : deadlocks(fixed)) controls.insert(s.substr(0, s.find('|')));
    REQUIRE_FALSE(controls.empty());
    for (const auto& c : controls) {
        CAPTURE(c);
        REQUIRE((c == "Ac" || c == "Ca"));
    }

    // 200 random instances simulated to their deadlock.
    std::mt19937_64 rng(1111);
    auto rand_weights = [&](int maxn) {
        std::vector<long> w(1 + rng() % maxn);
        for (auto& x : w) x = static_cast<long>(rng() % 6);  // weights 0..5
        return w;
    };
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<long> u = rand_weights(3), w = rand_weights(3);
        VpProcess sys = models::separation_system(u, w, 0, 5);
        models::SimResult r = models::simulate(sys, 10000, trial + 1);
        REQUIRE(r.deadlocked);

        auto as_longs = [](const Value& v) {
            std::vector<long> out;
            for (const auto& item : v.items) out.push_back(item.i);
            return out;
        };
        std::vector<long> s = as_longs(r.final_eval.at("S"));
        std::vector<long> l = as_longs(r.final_eval.at("L"));
        REQUIRE(s.size() == u.size());
        REQUIRE(l.size() == w.size());

        std::multiset<long> got(s.begin(), s.end());
        got.insert(l.begin(), l.end());
        std::multiset<long> want(u.begin(), u.end());
        want.insert(w.begin(), w.end());
        REQUIRE(got == want);

        REQUIRE(*std::max_element(s.begin(), s.end()) <=
                *std::min_element(l.begin(), l.end()));
    }
}

TEST_CASE("AC12: frame codings detect and correct their designed error classes") {
    Verdict v("AC12");

    // Hamming m=3: every message, unharmed or with any single flipped bit.
    std::set<std::vector<uint8_t>> balls_union;
    for (int msg = 0; msg < 16; ++msg) {
        BitVec message(4);
        for (int i = 0; i < 4; ++i) message[i] = (msg >> i) & 1;
        BitVec word = hamming_encode(3, message);

        auto clean = hamming_decode(3, word);
        REQUIRE(clean.message == message);
        REQUIRE_FALSE(clean.corrected.has_value());
        REQUIRE(balls_union.insert(word).second);  // ball disjointness

        for (int pos = 1; pos <= 7; ++pos) {
            BitVec dam = word;
            dam[pos - 1] ^= 1;
            auto fixed = hamming_decode(3, dam);
            REQUIRE(fixed.message == message);
            REQUIRE(fixed.corrected == pos);
            REQUIRE(balls_union.insert(dam).second);
        }
    }
    REQUIRE(balls_union.size() == 128);  // the balls tile the whole space

    // CRC generator x^15+x^14+1: all single errors and all double errors
    // with gap at most 2048 leave a nonzero remainder.
    Gf2Poly g = Gf2Poly::parse("x^15+x^14+1");
    for (int d = 0; d <= 2048; ++d)
        REQUIRE_FALSE(divmod(Gf2Poly::from_degrees({d}), g).second.is_zero());
    for (int gap = 1; gap <= 2048; ++gap)
        REQUIRE_FALSE(divmod(Gf2Poly::from_degrees({gap, 0}), g).second.is_zero());

    // Generators divisible by x+1 catch every odd-weight error: 10^4 trials.
    Gf2Poly parity = Gf2Poly::parse("x+1");
    Gf2Poly g2 = mul(parity, Gf2Poly::parse("x^14+x^13+1"));
    std::mt19937_64 rng(1212);
    for (int trial = 0; trial < 10000; ++trial) {
        std::set<int> degrees;
        int terms = 1 + 2 * static_cast<int>(rng() % 8);  // odd weight
        while (static_cast<int>(degrees.size()) < terms)
            degrees.insert(static_cast<int>(rng() % 2048));
        Gf2Poly err =
            Gf2Poly::from_degrees(std::vector<int>(degrees.begin(), degrees.end()));
        REQUIRE_FALSE(divmod(err, g2).second.is_zero());
        REQUIRE_FALSE(divmod(err, parity).second.is_zero());
    }
}

TEST_CASE("AC13: reduction reaches the one-state buffer and preserves behavior") {
    Verdict v("AC13");
    for (int n : {1, 2, 3}) {
        VpProcess b = models::buffer(n, 2);
        REQUIRE(b.states.size() == 1);
        REQUIRE(b.transitions.size() == 2);
        std::set<std::string> chans;
        for (const auto& t : b.transitions)
            for (const auto& op : t.op.ops)
                if (op.kind == Operator::Kind::In || op.kind == Operator::Kind::Out)
                    chans.insert(op.chan);
        REQUIRE(chans == std::set<std::string>{"In", "Out"});
    }

    // Reduction preserves observational behavior on the concretizable corpus.
    std::vector<VpProcess> corpus;
    corpus.push_back(models::buffer_process(1, 2));
    corpus.push_back(models::buffer_process(2, 2));
    corpus.push_back(models::buf_cell(2));
    corpus.push_back(models::buffer_chain(1, 1, 2));
    corpus.push_back(models::multiplier());
    corpus.push_back(models::duplicator());
    corpus.push_back(models::square());
    corpus.push_back(models::square_spec());
    corpus.push_back(models::square_spec_buffered());
    corpus.push_back(models::simple_protocol());
    corpus.push_back(models::abp_reduced());
    corpus.push_back(petri_to_process(models::petri_example()));
    corpus.push_back(models::separation_system({1}, {0}, 0, 1));
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        CAPTURE(i);
        VpProcess red = reduce(corpus[i], {ReduceRule::R1, ReduceRule::R2});
        REQUIRE(equivalent(conc(corpus[i]), conc(red), EquivKind::Weak));
    }
}

TEST_CASE("AC14: sliding windows deliver in order without duplicates") {
    Verdict v("AC14");
    VpProcess gbn = models::swp_go_back_n(4);
    VpProcess sr = models::swp_selective_repeat(4);
    for (const VpProcess* proto : {&gbn, &sr}) {
        std::size_t delivered = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            models::SimResult r = models::simulate(*proto, 2000, seed);
            REQUIRE_FALSE(r.deadlocked);

            std::map<std::string, std::vector<std::string>> chan;
            for (const auto& a : r.trace)
                if (a.valued()) chan[render(Action{a.kind, a.name, ""})].push_back(a.value);

            // Everything leaving at one end is a prefix of what entered at
            // the other: in order, complete up to in-flight frames, no
            // duplicates.
            auto is_prefix = [](const std::vector<std::string>& out,
                                const std::vector<std::string>& in) {
                if (out.size() > in.size()) return false;
                return std::equal(out.begin(), out.end(), in.begin());
            };
            REQUIRE(is_prefix(chan["Out2!"], chan["In1?"]));
            REQUIRE(is_prefix(chan["Out1!"], chan["In2?"]));
            delivered += chan["Out2!"].size() + chan["Out1!"].size();
        }
        REQUIRE(delivered > 50);  // the sweep exercises real traffic
    }
}
