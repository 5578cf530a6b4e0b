#include <benchmark/benchmark.h>

#include "ccsv/algebra.hpp"
#include "ccsv/equiv.hpp"
#include "ccsv/models.hpp"

using namespace ccsv;

static void BM_GreatestBisimJobshop(benchmark::State& state) {
    Lts shop = models::jobshop();
    Lts abs = models::abs_jobshop();
    for (auto _ : state) {
        Relation r = greatest_bisim(shop, abs, true);
        benchmark::DoNotOptimize(r.pairs.size());
    }
}
BENCHMARK(BM_GreatestBisimJobshop);

static void BM_WeakEquivScheduler(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Lts sch = models::scheduler(n);
    Lts ref = models::scheduler_reference(n);
    for (auto _ : state)
        benchmark::DoNotOptimize(equivalent(sch, ref, EquivKind::Weak));
}
BENCHMARK(BM_WeakEquivScheduler)->Arg(2)->Arg(3);

static void BM_CongruenceDispatcher(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Lts sys = models::dispatcher_system(n);
    Lts spec = prefix(Action::tau(), models::dispatcher_spec());
    for (auto _ : state)
        benchmark::DoNotOptimize(equivalent(sys, spec, EquivKind::Congruence));
}
BENCHMARK(BM_CongruenceDispatcher)->Arg(2)->Arg(3);
