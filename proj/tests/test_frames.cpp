#include "doctest.h"

#include <random>

#include "ccsv/frames.hpp"

using namespace ccsv;

TEST_CASE("polynomial construction, parsing and rendering") {
    Gf2Poly p = Gf2Poly::from_degrees({15, 14, 0});
    CHECK(p.degree() == 15);
    CHECK(p.coeff(15) == 1);
    CHECK(p.coeff(14) == 1);
    CHECK(p.coeff(13) == 0);
    CHECK(p.coeff(0) == 1);
    CHECK(p.coeff(99) == 0);

    CHECK(Gf2Poly::parse("x^15+x^14+1") == p);
    CHECK(Gf2Poly::parse(render(p)) == p);
    CHECK(Gf2Poly::parse("x") == Gf2Poly::from_degrees({1}));
    CHECK(Gf2Poly::parse("1") == Gf2Poly::from_degrees({0}));

    CHECK(Gf2Poly::from_coeffs({0, 0, 1, 1}) == Gf2Poly::parse("x+1"));
    CHECK(Gf2Poly::zero().is_zero());
    CHECK(Gf2Poly::zero().degree() == -1);
}

TEST_CASE("ring operations") {
    Gf2Poly a = Gf2Poly::parse("x^3+x+1");
    Gf2Poly b = Gf2Poly::parse("x+1");

    CHECK(add(a, a).is_zero());  // characteristic 2
    CHECK(add(a, Gf2Poly::zero()) == a);
    CHECK(mul(a, b) == Gf2Poly::parse("x^4+x^3+x^2+1"));
    CHECK(shift(b, 3) == Gf2Poly::parse("x^4+x^3"));

    auto [q, r] = divmod(mul(a, b), a);
    CHECK(q == b);
    CHECK(r.is_zero());
}

TEST_CASE("division invariant a = q*b + r with deg r < deg b") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 200; ++trial) {
        BitVec ac(1 + rng() % 24), bc(1 + rng() % 12);
        for (auto& c : ac) c = rng() & 1;
        for (auto& c : bc) c = rng() & 1;
        Gf2Poly a = Gf2Poly::from_coeffs(ac);
        Gf2Poly b = Gf2Poly::from_coeffs(bc);
        if (b.is_zero()) continue;
        auto [q, r] = divmod(a, b);
        CHECK(add(mul(q, b), r) == a);
        CHECK(r.degree() < b.degree());
    }
}

TEST_CASE("hamming m=3 round-trips and corrects any single error") {
    for (int msg = 0; msg < 16; ++msg) {
        BitVec message(4);
        for (int i = 0; i < 4; ++i) message[i] = (msg >> i) & 1;
        BitVec word = hamming_encode(3, message);
        REQUIRE(word.size() == 7);

        auto clean = hamming_decode(3, word);
        CHECK(clean.message == message);
        CHECK_FALSE(clean.corrected.has_value());

        for (int pos = 1; pos <= 7; ++pos) {
            BitVec corrupted = word;
            corrupted[pos - 1] ^= 1;
            auto fixed = hamming_decode(3, corrupted);
            CHECK(fixed.message == message);
            CHECK(fixed.corrected == pos);
        }
    }

    BitVec wrong(3);
    CHECK_THROWS_AS((void)hamming_encode(3, wrong), LengthMismatchError);
    BitVec short_word(6);
    CHECK_THROWS_AS((void)hamming_decode(3, short_word), LengthMismatchError);
}

TEST_CASE("crc transmitted words divide by the generator and carry the message") {
    Gf2Poly g = Gf2Poly::parse("x^15+x^14+1");
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 100; ++trial) {
        BitVec mc(1 + rng() % 64);
        for (auto& c : mc) c = rng() & 1;
        Gf2Poly m = Gf2Poly::from_coeffs(mc);
        Gf2Poly word = crc_encode(m, g);
        CHECK(crc_check(word, g));
        CHECK(crc_message(word, g) == m);

        if (!word.is_zero()) {
            Gf2Poly damaged = add(word, Gf2Poly::from_degrees({int(rng() % 16)}));
            CHECK_FALSE(crc_check(damaged, g));
        }
    }
}

TEST_CASE("crc generator shape is enforced") {
    // A generator without the constant term cannot detect trailing errors.
    CHECK_THROWS_AS((void)crc_encode(Gf2Poly::parse("x+1"), Gf2Poly::parse("x^4+x")),
                    BadGeneratorError);
}

TEST_CASE("the ieee 802 generator has degree 32 and both end terms") {
    const Gf2Poly& g = ieee802_generator();
    CHECK(g.degree() == 32);
    CHECK(g.coeff(32) == 1);
    CHECK(g.coeff(0) == 1);
    CHECK(crc_check(crc_encode(Gf2Poly::parse("x^7+x^2+1"), g), g));
}
