#ifndef PMFD_BENCH_SUPPORT_HPP
#define PMFD_BENCH_SUPPORT_HPP

#include <map>
#include <string>
#include <vector>

#include "pmfd/diagnosis.hpp"
#include "pmfd/eventlog.hpp"
#include "pmfd/timeseries.hpp"

namespace pmfd::bench {

/// Training windows of one fault from the synthetic benchmark.
inline std::vector<TimeSeriesWindow> fault_windows(int cycles, const char* label,
                                                   std::uint64_t seed = 11) {
    SynthSpec spec;
    spec.seed = seed;
    spec.cycles_per_class = cycles;
    const auto synth = synth_generate(spec);
    std::vector<TimeSeriesWindow> out;
    for (const auto& w : synth.windows)
        if (w.label == label) out.push_back(w);
    return out;
}

inline EventLog fault_log(int cycles, int k, const char* label = kVelocityLabel) {
    const auto windows = fault_windows(cycles, label);
    std::vector<std::vector<double>> values;
    for (const auto& w : windows) values.insert(values.end(), w.samples.begin(), w.samples.end());
    const auto centroids = kmeans_fit(values, k, 3);
    return build_log(windows, centroids, 10.0);
}

} // namespace pmfd::bench

#endif
