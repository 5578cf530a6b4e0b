#include <benchmark/benchmark.h>

#include <random>

#include "ccsv/frames.hpp"

using namespace ccsv;

static BitVec random_bits(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    BitVec bits(n);
    for (auto& b : bits) b = static_cast<unsigned char>(rng() & 1);
    return bits;
}

static void BM_HammingRoundTrip(benchmark::State& state) {
    BitVec message = random_bits(26, 7);  // m = 5
    for (auto _ : state) {
        BitVec code = hamming_encode(5, message);
        code[11] ^= 1;
        HammingDecoded d = hamming_decode(5, code);
        benchmark::DoNotOptimize(d.corrected.has_value());
    }
}
BENCHMARK(BM_HammingRoundTrip);

static void BM_CrcEncodeCheck(benchmark::State& state) {
    Gf2Poly g = Gf2Poly::from_degrees({15, 14, 0});
    std::size_t n = static_cast<std::size_t>(state.range(0));
    BitVec bits = random_bits(n, 11);
    bits[0] = 1;
    Gf2Poly message = Gf2Poly::from_coeffs(bits);
    for (auto _ : state) {
        Gf2Poly frame = crc_encode(message, g);
        benchmark::DoNotOptimize(crc_check(frame, g));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_CrcEncodeCheck)->Arg(256)->Arg(2048);

static void BM_PolyDivmod(benchmark::State& state) {
    BitVec a = random_bits(4096, 3);
    a[0] = 1;
    Gf2Poly big = Gf2Poly::from_coeffs(a);
    Gf2Poly g = ieee802_generator();
    for (auto _ : state) {
        auto [q, r] = divmod(big, g);
        benchmark::DoNotOptimize(r.degree());
    }
}
BENCHMARK(BM_PolyDivmod);

BENCHMARK_MAIN();
