#include <benchmark/benchmark.h>

#include "renimm/immigration.hpp"
#include "renimm/limit_processes.hpp"

using namespace renimm;

static void BM_subordinator_path(benchmark::State& state) {
    Stream s{StreamSeed{10, {}}};
    const std::size_t steps = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        const GridPath p = simulate_subordinator(0.5, 1.0, steps, s);
        benchmark::DoNotOptimize(p.values.back());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(steps));
}
BENCHMARK(BM_subordinator_path)->Arg(1024)->Arg(4096)->Arg(16384);

static void BM_immigration_path(benchmark::State& state) {
    Scenario sc;
    sc.law = IncrementLaw::exponential(1.0);
    sc.model = ResponseModel::indicator_survival(EtaLaw::pareto(0.5, 1.0));
    sc.kase = TheoremCase::thm21;
    sc.u_grid = {0.5, 1.0, 2.0};
    sc.t = static_cast<double>(state.range(0));
    sc.reps = 1;
    sc.validate();
    std::uint64_t rep = 0;
    for (auto _ : state) {
        const auto pv = simulate_path(sc, derive_stream(StreamSeed{11, {}}, rep++));
        benchmark::DoNotOptimize(pv.y[0]);
    }
}
BENCHMARK(BM_immigration_path)->Arg(100)->Arg(1000);

static void BM_z_replication(benchmark::State& state) {
    const CovarianceModel C{CovarianceModel::Form::max_power, -0.25};
    ZOptions opt;
    opt.n_steps = static_cast<std::size_t>(state.range(0));
    opt.jobs = 1;
    std::uint64_t rep = 0;
    for (auto _ : state) {
        const FddSample z = sample_Z(0.5, C, {0.5, 1.0, 2.0}, 1, StreamSeed{12, {rep++}}, opt);
        benchmark::DoNotOptimize(z.values[0]);
    }
}
BENCHMARK(BM_z_replication)->Arg(1024)->Arg(4096);
