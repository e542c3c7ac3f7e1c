// Serial reference vs OpenMP kernels. Run with --benchmark_filter=... to pick one.

#include <benchmark/benchmark.h>

#include "spingw/three_spin_p1.hpp"
#include "spingw/wdvv.hpp"

using namespace spingw;

namespace {

void table_build(benchmark::State &state, Exec exec)
{
    const int beta_max = static_cast<int>(state.range(0));
    for (auto _ : state) {
        CorrelatorTable t;
        t.build(beta_max, 6, exec);
        benchmark::DoNotOptimize(t.entries().size());
    }
}

void wdvv_all(benchmark::State &state, Exec exec)
{
    CorrelatorTable t;
    TruncatedSeries chi = assemble_potential(t, 3, static_cast<int>(state.range(0)));
    auto coords = p1_three_spin_coordinates();
    for (auto _ : state) {
        auto all = wdvv_all_residuals(chi, coords, exec);
        benchmark::DoNotOptimize(all.size());
    }
}

void third_derivatives(benchmark::State &state, Exec exec)
{
    CorrelatorTable t;
    TruncatedSeries chi = assemble_potential(t, 3, static_cast<int>(state.range(0)));
    auto coords = p1_three_spin_coordinates();
    for (auto _ : state) {
        ThirdDerivatives d(chi, coords.names, exec);
        benchmark::DoNotOptimize(d.dim());
    }
}

} // namespace

BENCHMARK_CAPTURE(table_build, serial, Exec::serial)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(table_build, parallel, Exec::parallel)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(third_derivatives, serial, Exec::serial)->Arg(16)->Arg(22)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(third_derivatives, parallel, Exec::parallel)->Arg(16)->Arg(22)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(wdvv_all, serial, Exec::serial)->Arg(16)->Arg(22)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(wdvv_all, parallel, Exec::parallel)->Arg(16)->Arg(22)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
