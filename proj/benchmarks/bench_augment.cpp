#include <benchmark/benchmark.h>

#include "cubaug/fixed_aug.hpp"
#include "cubaug/generate.hpp"
#include "cubaug/spqr.hpp"
#include "cubaug/var_aug.hpp"

using namespace cubaug;

namespace {

void variable_augmentable(benchmark::State& state) {
    EmbeddedGraph g = random_augmentable_subcubic(static_cast<int>(state.range(0)), 8);
    for (auto _ : state) benchmark::DoNotOptimize(augment_2con_variable(g.graph));
    state.SetComplexityN(state.range(0));
}

void variable_random(benchmark::State& state) {
    EmbeddedGraph g = random_planar_subcubic(static_cast<int>(state.range(0)), true, 8);
    for (auto _ : state) benchmark::DoNotOptimize(augment_2con_variable(g.graph));
    state.SetComplexityN(state.range(0));
}

void fixed_augmentable(benchmark::State& state) {
    EmbeddedGraph g = random_augmentable_subcubic(static_cast<int>(state.range(0)), 8);
    for (auto _ : state) benchmark::DoNotOptimize(augment_2con_fixed(g.graph, g.embedding));
    state.SetComplexityN(state.range(0));
}

void connected_fixed(benchmark::State& state) {
    EmbeddedGraph g = random_planar_subcubic(static_cast<int>(state.range(0)), false, 8);
    for (auto _ : state) benchmark::DoNotOptimize(augment_1con_fixed(g.graph, g.embedding));
    state.SetComplexityN(state.range(0));
}

void spqr_tree(benchmark::State& state) {
    EmbeddedGraph g = random_planar_subcubic(static_cast<int>(state.range(0)), true, 8);
    for (auto _ : state) benchmark::DoNotOptimize(build_spqr(g.graph, 0));
    state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(variable_augmentable)->Arg(1000)->Arg(5000)->Arg(10000)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(variable_random)->Arg(1000)->Arg(5000)->Arg(10000)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(fixed_augmentable)->Arg(1000)->Arg(5000)->Arg(10000)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(connected_fixed)->Arg(1000)->Arg(5000)->Arg(10000)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(spqr_tree)->Arg(1000)->Arg(5000)->Arg(10000)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK_MAIN();
