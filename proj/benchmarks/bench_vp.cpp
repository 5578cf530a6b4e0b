#include <benchmark/benchmark.h>

#include "ccsv/models.hpp"
#include "ccsv/vp.hpp"

using namespace ccsv;

static void BM_ConcretizeBuffer(benchmark::State& state) {
    VpProcess buf = models::buffer_process(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) {
        Lts c = concretize(buf);
        benchmark::DoNotOptimize(c.states.size());
    }
}
BENCHMARK(BM_ConcretizeBuffer)->Arg(1)->Arg(2)->Arg(3);

static void BM_ReduceBuffer(benchmark::State& state) {
    VpProcess buf = models::buffer_process(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) {
        VpProcess r = reduce(buf, {ReduceRule::R1, ReduceRule::R2, ReduceRule::R3});
        benchmark::DoNotOptimize(r.transitions.size());
    }
}
BENCHMARK(BM_ReduceBuffer)->Arg(1)->Arg(2)->Arg(3);

static void BM_VerifyAbpCertificate(benchmark::State& state) {
    VpProcess impl = models::abp_reduced();
    VpProcess spec = models::buf_cell(2);
    MuCertificate cert = models::abp_certificate();
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_mu_certificate(impl, spec, cert).ok);
}
BENCHMARK(BM_VerifyAbpCertificate);

static void BM_SimulateGoBackN(benchmark::State& state) {
    VpProcess gbn = models::swp_go_back_n(4);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        models::SimResult r = models::simulate(gbn, 500, ++seed);
        benchmark::DoNotOptimize(r.trace.size());
    }
}
BENCHMARK(BM_SimulateGoBackN);
