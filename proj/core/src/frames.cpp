#include "ccsv/frames.hpp"

#include <algorithm>
#include <cctype>

namespace ccsv {

Gf2Poly Gf2Poly::from_coeffs(BitVec highest_first) {
    std::size_t i = 0;
    while (i < highest_first.size() && highest_first[i] == 0) ++i;
    Gf2Poly p;
    p.coeffs.assign(highest_first.begin() + static_cast<long>(i), highest_first.end());
    return p;
}

Gf2Poly Gf2Poly::from_degrees(const std::vector<int>& degrees) {
    if (degrees.empty()) return zero();
    int top = *std::max_element(degrees.begin(), degrees.end());
    BitVec bits(static_cast<std::size_t>(top) + 1, 0);
    for (int d : degrees) bits[static_cast<std::size_t>(top - d)] ^= 1;
    return from_coeffs(std::move(bits));
}

uint8_t Gf2Poly::coeff(int deg) const {
    if (deg < 0 || deg > degree()) return 0;
    return coeffs[static_cast<std::size_t>(degree() - deg)];
}

Gf2Poly add(const Gf2Poly& a, const Gf2Poly& b) {
    int top = std::max(a.degree(), b.degree());
    if (top < 0) return Gf2Poly::zero();
    BitVec bits(static_cast<std::size_t>(top) + 1, 0);
    for (int d = 0; d <= top; ++d)
        bits[static_cast<std::size_t>(top - d)] = a.coeff(d) ^ b.coeff(d);
    return Gf2Poly::from_coeffs(std::move(bits));
}

Gf2Poly mul(const Gf2Poly& a, const Gf2Poly& b) {
    if (a.is_zero() || b.is_zero()) return Gf2Poly::zero();
    BitVec bits(static_cast<std::size_t>(a.degree() + b.degree()) + 1, 0);
    int top = a.degree() + b.degree();
    for (int i = 0; i <= a.degree(); ++i)
        for (int j = 0; j <= b.degree(); ++j)
            if (a.coeff(i) && b.coeff(j)) bits[static_cast<std::size_t>(top - i - j)] ^= 1;
    return Gf2Poly::from_coeffs(std::move(bits));
}

Gf2Poly shift(const Gf2Poly& a, int k) {
    if (a.is_zero()) return a;
    Gf2Poly p = a;
    p.coeffs.insert(p.coeffs.end(), static_cast<std::size_t>(k), 0);
    return p;
}

std::pair<Gf2Poly, Gf2Poly> divmod(const Gf2Poly& a, const Gf2Poly& b) {
    if (b.is_zero()) throw Error("division by the zero polynomial");
    if (a.degree() < b.degree()) return {Gf2Poly::zero(), a};
    BitVec rem = a.coeffs;
    BitVec quo(static_cast<std::size_t>(a.degree() - b.degree()) + 1, 0);
    for (std::size_t i = 0; i + b.coeffs.size() <= rem.size(); ++i) {
        if (!rem[i]) continue;
        quo[i] = 1;
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) rem[i + j] ^= b.coeffs[j];
    }
    return {Gf2Poly::from_coeffs(std::move(quo)), Gf2Poly::from_coeffs(std::move(rem))};
}

std::string render(const Gf2Poly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (int d = p.degree(); d >= 0; --d) {
        if (!p.coeff(d)) continue;
        if (!s.empty()) s += "+";
        if (d == 0)
            s += "1";
        else if (d == 1)
            s += "x";
        else
            s += "x^" + std::to_string(d);
    }
    return s;
}

Gf2Poly Gf2Poly::parse(const std::string& text) {
    std::vector<int> degrees;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    while (i < text.size()) {
        if (text[i] == 'x') {
            ++i;
            if (i < text.size() && text[i] == '^') {
                ++i;
                std::size_t start = i;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                if (start == i) throw ParseError("polynomial: exponent expected");
                degrees.push_back(std::stoi(text.substr(start, i - start)));
            } else {
                degrees.push_back(1);
            }
        } else if (std::isdigit(static_cast<unsigned char>(text[i]))) {
            std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            std::string lit = text.substr(start, i - start);
            if (lit == "1")
                degrees.push_back(0);
            else if (lit != "0")
                throw ParseError("polynomial: unexpected coefficient '" + lit + "'");
        } else {
            throw ParseError(std::string("polynomial: unexpected character '") + text[i] + "'");
        }
        skip_ws();
        if (i < text.size()) {
            if (text[i] != '+') throw ParseError("polynomial: '+' expected");
            ++i;
            skip_ws();
        }
    }
    return from_degrees(degrees);
}

namespace {

bool is_control_position(int pos) { return (pos & (pos - 1)) == 0; }

void check_m(int m) {
    if (m < 2) throw LengthMismatchError("hamming: m must be at least 2");
}

}  // namespace

BitVec hamming_encode(int m, const BitVec& message) {
    check_m(m);
    int n = (1 << m) - 1;
    int k = n - m;
    if (static_cast<int>(message.size()) != k)
        throw LengthMismatchError("hamming_encode: message length must be " + std::to_string(k));

    BitVec word(static_cast<std::size_t>(n) + 1, 0);  // 1-based
    std::size_t next = 0;
    for (int pos = 1; pos <= n; ++pos)
        if (!is_control_position(pos)) word[static_cast<std::size_t>(pos)] = message[next++];
    for (int j = 0; j < m; ++j) {
        int cpos = 1 << j;
        uint8_t parity = 0;
        for (int pos = 1; pos <= n; ++pos)
            if (pos != cpos && (pos & cpos)) parity ^= word[static_cast<std::size_t>(pos)];
        word[static_cast<std::size_t>(cpos)] = parity;
    }
    return BitVec(word.begin() + 1, word.end());
}

HammingDecoded hamming_decode(int m, const BitVec& word_in) {
    check_m(m);
    int n = (1 << m) - 1;
    if (static_cast<int>(word_in.size()) != n)
        throw LengthMismatchError("hamming_decode: word length must be " + std::to_string(n));

    BitVec word(static_cast<std::size_t>(n) + 1, 0);
    for (int pos = 1; pos <= n; ++pos) word[static_cast<std::size_t>(pos)] = word_in[pos - 1];

    int syndrome = 0;
    for (int j = 0; j < m; ++j) {
        uint8_t parity = 0;
        for (int pos = 1; pos <= n; ++pos)
            if (pos & (1 << j)) parity ^= word[static_cast<std::size_t>(pos)];
        if (parity) syndrome |= 1 << j;
    }

    HammingDecoded result;
    if (syndrome != 0) {
        word[static_cast<std::size_t>(syndrome)] ^= 1;
        result.corrected = syndrome;
    }
    for (int pos = 1; pos <= n; ++pos)
        if (!is_control_position(pos))
            result.message.push_back(word[static_cast<std::size_t>(pos)]);
    return result;
}

namespace {

void check_generator(const Gf2Poly& g) {
    if (g.degree() < 1 || !g.coeff(0) || !g.coeff(g.degree()))
        throw BadGeneratorError("generator must have the form x^r + ... + 1 with r >= 1");
}

}  // namespace

Gf2Poly crc_encode(const Gf2Poly& message, const Gf2Poly& g) {
    check_generator(g);
    Gf2Poly shifted = shift(message, g.degree());
    auto [q, r] = divmod(shifted, g);
    return add(shifted, r);
}

bool crc_check(const Gf2Poly& word, const Gf2Poly& g) {
    check_generator(g);
    return divmod(word, g).second.is_zero();
}

Gf2Poly crc_message(const Gf2Poly& word, const Gf2Poly& g) {
    check_generator(g);
    // Drop the r low-order coefficient positions.
    if (word.degree() < g.degree()) return Gf2Poly::zero();
    BitVec bits(word.coeffs.begin(), word.coeffs.end() - g.degree());
    return Gf2Poly::from_coeffs(std::move(bits));
}

const Gf2Poly& ieee802_generator() {
    static const Gf2Poly g = Gf2Poly::from_degrees(
        {32, 26, 23, 22, 16, 12, 11, 10, 8, 7, 5, 4, 2, 1, 0});
    return g;
}

}  // namespace ccsv
