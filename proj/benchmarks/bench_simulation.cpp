#include <benchmark/benchmark.h>

#include "pmfd/diagnosis.hpp"
#include "pmfd/discovery.hpp"
#include "pmfd/stochastic.hpp"

#include "bench_support.hpp"

using namespace pmfd;

namespace {

StochasticPetriNet make_spn(int cycles, int k) {
    const auto log = bench::fault_log(cycles, k, kWeightLabel);
    auto net = tree_to_petri(inductive_miner(log, 0.75));
    std::map<int, DurationHistogram> hists;
    for (const auto& [state, times] : collect_state_times(log))
        hists.emplace(state, build_histogram(times, 10));
    return enhance(std::move(net), hists);
}

void BM_simulate_trace(benchmark::State& state) {
    const auto spn = make_spn(24, static_cast<int>(state.range(0)));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_trace(spn, seed++).steps.size());
    }
}

void BM_simulate_pool_300(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const auto windows = bench::fault_windows(24, kWeightLabel);
    std::vector<std::vector<double>> values;
    for (const auto& w : windows) values.insert(values.end(), w.samples.begin(), w.samples.end());
    const auto centroids = kmeans_fit(values, k, 3);
    const auto spn = make_spn(24, k);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_pool(spn, 300, 5, centroids, 10.0).size());
    }
}

void BM_identify(benchmark::State& state) {
    SynthSpec spec;
    spec.seed = 11;
    spec.cycles_per_class = 24;
    const auto synth = synth_generate(spec);
    std::map<std::string, std::vector<TimeSeriesWindow>> training;
    for (const auto& w : synth.windows)
        if (w.label != kNormalLabel) training[w.label].push_back(w);
    DictionaryConfig cfg;
    cfg.k = static_cast<int>(state.range(0));
    cfg.n_sims = 300;
    const auto dict = build_dictionary(training, cfg);
    const auto& window = training.begin()->second.front();
    for (auto _ : state) {
        benchmark::DoNotOptimize(identify(window, dict).fault_label);
    }
}

} // namespace

BENCHMARK(BM_simulate_trace)->Arg(4)->Arg(6);
BENCHMARK(BM_simulate_pool_300)->Arg(5);
BENCHMARK(BM_identify)->Arg(5)->Unit(benchmark::kMillisecond);
