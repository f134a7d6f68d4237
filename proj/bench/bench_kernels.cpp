// Parallel kernels against their serial references.

#include "bitlet/analysis.hpp"
#include "bitlet/magic_sim.hpp"
#include "bitlet/op_catalog.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace bitlet;

ArrayState noisy_state(std::uint64_t rows, std::uint32_t cols)
{
    ArrayState s(rows, cols);
    std::mt19937_64 rng(7);
    for (std::uint32_t c = 0; c < cols; ++c) {
        for (auto& w : s.column(c)) {
            w = rng();
        }
        s.column(c).back() &= s.tail_mask();
    }
    return s;
}

void BM_Run(benchmark::State& st)
{
    const OpSpec spec(OpKind::Add, 16);
    const NorProgram prog = microprogram_of(spec);
    const ArrayState init = noisy_state(static_cast<std::uint64_t>(st.range(0)), columns_required(spec));
    for (auto _ : st) {
        benchmark::DoNotOptimize(run(prog, init));
    }
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_RunReference(benchmark::State& st)
{
    const OpSpec spec(OpKind::Add, 16);
    const NorProgram prog = microprogram_of(spec);
    const ArrayState init = noisy_state(static_cast<std::uint64_t>(st.range(0)), columns_required(spec));
    for (auto _ : st) {
        benchmark::DoNotOptimize(run_reference(prog, init));
    }
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

SweepSpec sweep_spec(std::int64_t steps)
{
    SweepSpec s;
    s.parameter = SweepParameter::Oc;
    s.grid = Grid{1, 1e6, static_cast<std::size_t>(steps), true};
    s.power = PowerBudget(20);
    return s;
}

void BM_Sweep(benchmark::State& st)
{
    const SweepSpec s = sweep_spec(st.range(0));
    for (auto _ : st) {
        benchmark::DoNotOptimize(sweep(s));
    }
}

void BM_SweepSerial(benchmark::State& st)
{
    const SweepSpec s = sweep_spec(st.range(0));
    for (auto _ : st) {
        benchmark::DoNotOptimize(sweep_serial(s));
    }
}

} // namespace

BENCHMARK(BM_Run)->Arg(1024)->Arg(65536);
BENCHMARK(BM_RunReference)->Arg(1024)->Arg(65536);
BENCHMARK(BM_Sweep)->Arg(1000)->Arg(100000);
BENCHMARK(BM_SweepSerial)->Arg(1000)->Arg(100000);

BENCHMARK_MAIN();
