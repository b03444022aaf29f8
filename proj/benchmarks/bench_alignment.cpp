#include <benchmark/benchmark.h>

#include "pmfd/conformance.hpp"
#include "pmfd/discovery.hpp"
#include "pmfd/rng.hpp"

#include "bench_support.hpp"

using namespace pmfd;

namespace {

// average-window trace, with a few injected deviations to keep A* honest
std::vector<std::string> deviating_trace(const PetriNet& net, std::size_t length) {
    std::vector<std::string> alphabet;
    for (std::size_t t = 0; t < net.n_transitions(); ++t)
        if (!net.is_silent(t)) alphabet.push_back(net.label(t));
    Rng rng(5);
    std::vector<std::string> trace;
    for (std::size_t i = 0; i < length; ++i)
        trace.push_back(alphabet[rng.uniform_index(alphabet.size())]);
    return trace;
}

void BM_align(benchmark::State& state) {
    const auto log = bench::fault_log(24, static_cast<int>(state.range(0)));
    const auto net = tree_to_petri(inductive_miner(log, 0.75));
    const auto trace = deviating_trace(net, static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(align(trace, net).cost);
    }
    state.SetLabel("|P|+|Tr|=" + std::to_string(net.n_places() + net.n_transitions()));
}

void BM_fitness(benchmark::State& state) {
    const auto log = bench::fault_log(24, static_cast<int>(state.range(0)));
    const auto net = tree_to_petri(inductive_miner(log, 0.75));
    std::vector<std::string> trace;
    for (const auto& e : log.cases.front().trace)
        trace.push_back(activity_label(e.src, e.dst));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fitness(trace, net));
    }
}

void BM_soundness(benchmark::State& state) {
    const auto log = bench::fault_log(24, static_cast<int>(state.range(0)));
    const auto net = tree_to_petri(inductive_miner(log, 0.75));
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_soundness(net, 100000).sound());
    }
}

} // namespace

BENCHMARK(BM_align)->Args({4, 8})->Args({5, 8})->Args({6, 16})->Args({7, 24});
BENCHMARK(BM_fitness)->Arg(4)->Arg(5)->Arg(6);
BENCHMARK(BM_soundness)->Arg(4)->Arg(6);
