#include <benchmark/benchmark.h>

#include "renimm/rng.hpp"

using namespace renimm;

static void BM_uniform(benchmark::State& state) {
    Stream s{StreamSeed{1, {}}};
    for (auto _ : state) benchmark::DoNotOptimize(s.u01());
}
BENCHMARK(BM_uniform);

static void BM_normal(benchmark::State& state) {
    Stream s{StreamSeed{2, {}}};
    for (auto _ : state) benchmark::DoNotOptimize(s.normal());
}
BENCHMARK(BM_normal);

static void BM_positive_stable(benchmark::State& state) {
    Stream s{StreamSeed{3, {}}};
    const double alpha = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(sample_positive_stable(alpha, s));
}
BENCHMARK(BM_positive_stable)->Arg(3)->Arg(5)->Arg(7);

static void BM_spectrally_negative(benchmark::State& state) {
    Stream s{StreamSeed{4, {}}};
    StableSpec spec;
    spec.alpha = 1.5;
    spec.skew = StableSkew::spectrally_negative;
    for (auto _ : state) benchmark::DoNotOptimize(sample_stable_increment(spec, 1.0, s));
}
BENCHMARK(BM_spectrally_negative);

BENCHMARK_MAIN();
