#ifndef PMFD_EVENTLOG_HPP
#define PMFD_EVENTLOG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pmfd/timeseries.hpp"

namespace pmfd {

/// Fitted k-means model; states are centroid indices in [0, k).
struct Centroids {
    int k = 0;
    std::uint64_t seed = 0;
    double inertia = 0.0;
    std::vector<std::vector<double>> points; // k vectors of dimension p

    std::size_t dim() const { return points.empty() ? 0 : points.front().size(); }
};

/// A state transition src->dst observed at a window-relative timestep, with
/// the time spent in src before leaving it.
struct Event {
    int src = 0;
    int dst = 0;
    std::size_t timestep = 0;  // index of the first sample of dst within the window
    double state_time_s = 0.0; // duration of src
};

struct Case {
    std::string id;
    std::vector<Event> trace;
};

struct EventLog {
    int k = 0;
    std::string fault_label;
    std::vector<Case> cases;
};

/// Lloyd's algorithm with k-means++ seeding, best of 10 seeded restarts.
/// Each run stops after 300 iterations or when the relative inertia change
/// drops below 1e-6; empty clusters are reseeded at the point farthest from
/// its centroid. Deterministic per seed. If inertia_history is given, it
/// receives the per-iteration inertia of the winning restart.
Centroids kmeans_fit(const std::vector<std::vector<double>>& values, int k, std::uint64_t seed,
                     std::vector<double>* inertia_history = nullptr);

/// Nearest centroid (Euclidean) per sample; ties break to the lowest state id.
std::vector<int> assign_states(const std::vector<std::vector<double>>& samples,
                               const Centroids& c);
std::vector<int> assign_states(const TimeSeriesWindow& window, const Centroids& c);

/// One Event per change point of the window's state sequence; the first
/// state's duration is measured from the window start.
/// Throws WindowTooShortError, NoTransitionsError.
Case extract_case(const TimeSeriesWindow& window, const Centroids& c, double rate_hz,
                  const std::string& case_id);

struct LogBuildReport {
    std::size_t windows_in = 0;
    std::size_t skipped_degenerate = 0;
};

/// One case per window with at least one transition; single-state windows are
/// skipped and counted. Throws AllWindowsDegenerateError.
EventLog build_log(const std::vector<TimeSeriesWindow>& windows, const Centroids& c,
                   double rate_hz, LogBuildReport* report = nullptr);

/// Canonical state-transition activity label, "s1->s2".
std::string activity_label(int src, int dst);
/// Parses an activity label back to (src, dst); nullopt if not canonical.
std::optional<std::pair<int, int>> parse_activity_label(std::string_view label);

/// Serialization for external process-mining tools.
std::string log_to_json(const EventLog& log);
std::string log_to_csv(const EventLog& log);

} // namespace pmfd

#endif
