#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccsv/errors.hpp"

namespace ccsv {

using BitVec = std::vector<uint8_t>;  // each element 0 or 1

// Polynomial over GF(2), coefficients highest degree first, canonical form
// (no leading zero except for the zero polynomial, stored as empty).
struct Gf2Poly {
    BitVec coeffs;

    static Gf2Poly zero() { return {}; }
    static Gf2Poly from_coeffs(BitVec highest_first);       // canonicalizes
    static Gf2Poly from_degrees(const std::vector<int>& degrees);  // e.g. {15,14,0}
    static Gf2Poly parse(const std::string& text);          // "x^15+x^14+1"

    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    uint8_t coeff(int deg) const;  // 0 outside range

    friend bool operator==(const Gf2Poly&, const Gf2Poly&) = default;
};

Gf2Poly add(const Gf2Poly& a, const Gf2Poly& b);  // == subtraction in GF(2)
Gf2Poly mul(const Gf2Poly& a, const Gf2Poly& b);
Gf2Poly shift(const Gf2Poly& a, int k);  // multiply by x^k
std::pair<Gf2Poly, Gf2Poly> divmod(const Gf2Poly& a, const Gf2Poly& b);
std::string render(const Gf2Poly& p);

// Hamming single-error-correcting code with m control bits: block length
// n = 2^m - 1, message length k = 2^m - m - 1. Position 1 is the first
// transmitted bit; control bits sit at positions 2^j.
BitVec hamming_encode(int m, const BitVec& message);

struct HammingDecoded {
    BitVec message;
    std::optional<int> corrected;  // 1-based position of the flipped bit
};
HammingDecoded hamming_decode(int m, const BitVec& word);

// CRC with generator g of the form x^r + ... + 1: the transmitted word is
// T(x) = x^r * M(x) + R(x) where R is the remainder of x^r * M by g; T is
// divisible by g and the message is the top part of T.
Gf2Poly crc_encode(const Gf2Poly& message, const Gf2Poly& g);
bool crc_check(const Gf2Poly& word, const Gf2Poly& g);
Gf2Poly crc_message(const Gf2Poly& word, const Gf2Poly& g);  // truncation

// Degree-32 generator used by the IEEE 802 standard.
const Gf2Poly& ieee802_generator();

}  // namespace ccsv
