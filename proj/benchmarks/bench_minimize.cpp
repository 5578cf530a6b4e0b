#include <benchmark/benchmark.h>

#include "ccsv/hml.hpp"
#include "ccsv/minimize.hpp"
#include "ccsv/models.hpp"

using namespace ccsv;

static void BM_MinimizeJobshopWeak(benchmark::State& state) {
    Lts shop = models::jobshop();
    for (auto _ : state) {
        Lts m = minimize(shop, MinimizeKind::Weak);
        benchmark::DoNotOptimize(m.states.size());
    }
}
BENCHMARK(BM_MinimizeJobshopWeak);

static void BM_MinimizeSchedulerStrong(benchmark::State& state) {
    Lts sch = models::scheduler(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        Lts m = minimize(sch, MinimizeKind::Strong);
        benchmark::DoNotOptimize(m.states.size());
    }
}
BENCHMARK(BM_MinimizeSchedulerStrong)->Arg(2)->Arg(3)->Arg(4);

static void BM_DistinguishJobshop(benchmark::State& state) {
    Lts shop = models::jobshop();
    Lts abs = models::abs_jobshop();
    for (auto _ : state) {
        auto f = distinguish(shop, abs, Semantics::Strong);
        benchmark::DoNotOptimize(f.has_value());
    }
}
BENCHMARK(BM_DistinguishJobshop);
