#ifndef PMFD_STOCHASTIC_HPP
#define PMFD_STOCHASTIC_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pmfd/eventlog.hpp"
#include "pmfd/petri.hpp"
#include "pmfd/rng.hpp"

namespace pmfd {

/// Equal-width binned duration distribution in seconds.
struct DurationHistogram {
    std::vector<double> bin_edges; // n+1 strictly increasing edges
    std::vector<double> probs;     // n probabilities summing to 1
    std::size_t support_count = 0;

    double min() const { return bin_edges.front(); }
    double max() const { return bin_edges.back(); }
    bool contains(double v) const { return v >= min() && v <= max(); }
    /// Samples a bin by probability, then uniformly within the bin.
    double sample(Rng& rng) const;
};

/// Duration of the source state of every event, grouped by state.
/// Throws EmptyLogError.
std::map<int, std::vector<double>> collect_state_times(const EventLog& log);

/// Equal-width bins over [min, max]; a single-valued list gets one degenerate
/// bin [v, v+eps]. Throws EmptyTimesError.
DurationHistogram build_histogram(const std::vector<double>& times, std::size_t bins);

/// Net plus per-transition firing-time distributions. Silent transitions
/// fire in zero time and carry no histogram entry.
struct StochasticPetriNet {
    PetriNet net;
    std::map<std::size_t, DurationHistogram> dist; // by transition index, visible only
};

/// Attaches each visible transition the histogram of the source state of its
/// label, per activity_to_source_state. Throws MissingDistributionError.
StochasticPetriNet enhance(PetriNet net, const std::map<int, DurationHistogram>& state_histograms,
                           const std::map<std::string, int>& activity_to_source_state);
/// Same, deriving the activity map from canonical "sA->sB" labels.
StochasticPetriNet enhance(PetriNet net, const std::map<int, DurationHistogram>& state_histograms);

struct TimedStep {
    std::string label;
    int source_state = 0;
    double duration_s = 0.0;
};

struct TimedTrace {
    std::vector<TimedStep> steps;
    // State the run ends in, with a sampled dwell time; every step only
    // carries its source state, so without this the window would always stop
    // one plateau short of the behavior it simulates.
    int terminal_state = -1;
    double terminal_duration_s = 0.0;

    std::vector<std::string> labels() const;
};

/// Replays the net from its initial marking. Silent transitions fire in zero
/// time; when silent and visible transitions are enabled together, a uniform
/// draw over all enabled transitions decides between a silent fire and the
/// duration race. In the race every enabled visible transition samples a
/// duration from its histogram and the minimum fires. Stops at the final
/// marking. Throws TraceOverflowError, DeadlockError.
TimedTrace simulate_trace(const StochasticPetriNet& spn, std::uint64_t seed,
                          std::size_t max_events = 200);

/// Def-style simulated window: (state, duration) pairs materialized by
/// holding the state's centroid for round(duration * rate) samples.
struct SimulatedWindow {
    std::vector<std::pair<int, double>> pairs;
    std::vector<std::vector<double>> samples;
};

/// Throws ZeroLengthWindowError if every duration rounds to zero samples.
SimulatedWindow trace_to_window(const TimedTrace& trace, const Centroids& centroids,
                                double rate_hz);

struct PoolReport {
    std::size_t requested = 0;
    std::size_t succeeded = 0;
    std::size_t failed = 0;       // overflow or deadlock
    std::size_t empty_traces = 0; // runs that completed without samples
};

/// Up to n simulated windows from seeds derived in order; runs that overflow
/// or deadlock are skipped and counted, and runs whose trace materializes no
/// samples (the net completed silently) draw a replacement seed, capped at 4n
/// attempts. Throws TooManyFailuresError if fewer than n/2 windows result.
std::vector<SimulatedWindow> simulate_pool(const StochasticPetriNet& spn, std::size_t n,
                                           std::uint64_t seed, const Centroids& centroids,
                                           double rate_hz, PoolReport* report = nullptr,
                                           std::size_t max_events = 200);

/// Histogram CSV (state, bin_lo, bin_hi, prob), the raw form of the state
/// time distribution heatmaps.
std::string histograms_to_csv(const std::map<int, DurationHistogram>& state_histograms);
std::map<int, DurationHistogram> histograms_from_csv(const std::string& csv);

} // namespace pmfd

#endif
