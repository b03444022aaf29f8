#include <benchmark/benchmark.h>

#include "pmfd/discovery.hpp"

#include "bench_support.hpp"

using namespace pmfd;

namespace {

void BM_inductive_miner(benchmark::State& state) {
    const auto log = bench::fault_log(static_cast<int>(state.range(0)),
                                      static_cast<int>(state.range(1)));
    std::size_t events = 0;
    for (const auto& c : log.cases) events += c.trace.size();
    for (auto _ : state) {
        benchmark::DoNotOptimize(tree_to_petri(inductive_miner(log, 0.75)).n_places());
    }
    state.SetLabel("#E=" + std::to_string(events));
}

void BM_heuristics_miner(benchmark::State& state) {
    const auto log = bench::fault_log(static_cast<int>(state.range(0)),
                                      static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(heuristics_miner(log, 0.75, 0.65).n_places());
    }
}

void BM_kmeans(benchmark::State& state) {
    const auto windows = bench::fault_windows(static_cast<int>(state.range(0)), kWeightLabel);
    std::vector<std::vector<double>> values;
    for (const auto& w : windows) values.insert(values.end(), w.samples.begin(), w.samples.end());
    for (auto _ : state) {
        benchmark::DoNotOptimize(kmeans_fit(values, static_cast<int>(state.range(1)), 7).inertia);
    }
    state.SetLabel(std::to_string(values.size()) + " points");
}

} // namespace

BENCHMARK(BM_inductive_miner)->Args({16, 5})->Args({64, 5})->Args({64, 8});
BENCHMARK(BM_heuristics_miner)->Args({16, 5})->Args({64, 5})->Args({64, 8});
BENCHMARK(BM_kmeans)->Args({16, 5})->Args({64, 5})->Args({64, 12});
