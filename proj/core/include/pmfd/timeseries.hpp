#ifndef PMFD_TIMESERIES_HPP
#define PMFD_TIMESERIES_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pmfd {

inline constexpr const char* kNormalLabel = "normal";

/// Fixed-rate multivariate series. Timestep i is sample index i; wall-clock
/// time is i / sampling_rate_hz.
struct MultivariateTimeSeries {
    double sampling_rate_hz = 1.0;
    std::vector<std::string> feature_names;
    std::vector<std::vector<double>> samples; // samples[t][f]

    std::size_t size() const { return samples.size(); }
    std::size_t dim() const { return samples.empty() ? feature_names.size() : samples.front().size(); }
};

/// Contiguous labeled slice [start, end] of a parent series.
struct TimeSeriesWindow {
    std::string parent_id;
    std::size_t start = 0;
    std::size_t end = 0; // inclusive
    std::string label = kNormalLabel;
    std::vector<std::vector<double>> samples;

    std::size_t size() const { return samples.size(); }
    std::size_t dim() const { return samples.empty() ? 0 : samples.front().size(); }
};

/// Copies the [start, end] slice of ts into a window.
TimeSeriesWindow slice_window(const MultivariateTimeSeries& ts, const std::string& parent_id,
                              std::size_t start, std::size_t end, const std::string& label);

/// Reads a header CSV, one sample per row, keeping only feature_columns.
/// Throws MissingColumnError, NonNumericCellError, EmptyFileError.
MultivariateTimeSeries load_csv(const std::string& path,
                                const std::vector<std::string>& feature_columns,
                                double sampling_rate_hz);

/// Maps every feature independently onto [0, 1]. Constant features map to 0.
MultivariateTimeSeries normalize_minmax(const MultivariateTimeSeries& ts);

/// Benchmark generator configuration. Patterns are piecewise plateaus with a
/// small per-segment drift plus gaussian noise; the two fault classes mimic a
/// low-amplitude slow oscillation and a step-like staircase.
struct SynthSpec {
    std::uint64_t seed = 1;
    int cycles_per_class = 20; // fault windows per class; normal windows are 2x this
    int normal_len = 50;
    int velocity_len = 80;
    int weight_len = 102;
    double noise_std = 0.005;
    double duration_jitter = 0.3;    // relative spread of plateau hold times
    double velocity_amplitude = 0.5; // scales the velocity fault's plateau levels
};

inline constexpr const char* kVelocityLabel = "velocity";
inline constexpr const char* kWeightLabel = "weight";

struct SynthResult {
    MultivariateTimeSeries series;
    std::vector<TimeSeriesWindow> windows; // each labeled normal/velocity/weight
};

/// Deterministic synthetic benchmark: cycles of normal / velocity / normal /
/// weight pattern windows concatenated into one series, with ground truth.
/// Throws InvalidSpecError.
SynthResult synth_generate(const SynthSpec& spec);

/// Seeded shuffle split; |train| = round(train_fraction * n).
std::pair<std::vector<TimeSeriesWindow>, std::vector<TimeSeriesWindow>>
split_holdout(const std::vector<TimeSeriesWindow>& windows, double train_fraction,
              std::uint64_t seed);

} // namespace pmfd

#endif
