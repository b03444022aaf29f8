#include "pmfd/timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "pmfd/errors.hpp"
#include "pmfd/rng.hpp"

namespace pmfd {

TimeSeriesWindow slice_window(const MultivariateTimeSeries& ts, const std::string& parent_id,
                              std::size_t start, std::size_t end, const std::string& label) {
    if (start > end) throw EmptyInputError("window start must not exceed end");
    if (end >= ts.size()) throw EmptyInputError("window end beyond series length");
    TimeSeriesWindow w;
    w.parent_id = parent_id;
    w.start = start;
    w.end = end;
    w.label = label;
    w.samples.assign(ts.samples.begin() + static_cast<std::ptrdiff_t>(start),
                     ts.samples.begin() + static_cast<std::ptrdiff_t>(end) + 1);
    return w;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // trim whitespace and CR
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

bool parse_double(const std::string& s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

} // namespace

MultivariateTimeSeries load_csv(const std::string& path,
                                const std::vector<std::string>& feature_columns,
                                double sampling_rate_hz) {
    std::ifstream in(path);
    if (!in) throw EmptyFileError(path);

    std::string header;
    if (!std::getline(in, header)) throw EmptyFileError(path);
    const auto columns = split_csv_line(header);

    std::vector<std::size_t> col_index;
    col_index.reserve(feature_columns.size());
    for (const auto& name : feature_columns) {
        const auto it = std::find(columns.begin(), columns.end(), name);
        if (it == columns.end()) throw MissingColumnError(name);
        col_index.push_back(static_cast<std::size_t>(it - columns.begin()));
    }

    MultivariateTimeSeries ts;
    ts.sampling_rate_hz = sampling_rate_hz;
    ts.feature_names = feature_columns;

    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto cells = split_csv_line(line);
        std::vector<double> sample(feature_columns.size());
        for (std::size_t f = 0; f < col_index.size(); ++f) {
            if (col_index[f] >= cells.size() || !parse_double(cells[col_index[f]], sample[f]))
                throw NonNumericCellError(row, feature_columns[f]);
        }
        ts.samples.push_back(std::move(sample));
        ++row;
    }
    if (ts.samples.empty()) throw EmptyFileError(path);
    return ts;
}

MultivariateTimeSeries normalize_minmax(const MultivariateTimeSeries& ts) {
    if (ts.samples.empty()) throw EmptySeriesError();
    const std::size_t p = ts.dim();
    std::vector<double> lo(p, std::numeric_limits<double>::infinity());
    std::vector<double> hi(p, -std::numeric_limits<double>::infinity());
    for (const auto& s : ts.samples) {
        for (std::size_t f = 0; f < p; ++f) {
            lo[f] = std::min(lo[f], s[f]);
            hi[f] = std::max(hi[f], s[f]);
        }
    }
    MultivariateTimeSeries out;
    out.sampling_rate_hz = ts.sampling_rate_hz;
    out.feature_names = ts.feature_names;
    out.samples.reserve(ts.samples.size());
    for (const auto& s : ts.samples) {
        std::vector<double> v(p);
        for (std::size_t f = 0; f < p; ++f) {
            const double span = hi[f] - lo[f];
            v[f] = span > 0.0 ? (s[f] - lo[f]) / span : 0.0; // constant feature -> 0
        }
        out.samples.push_back(std::move(v));
    }
    return out;
}

namespace {

// Per-feature amplitude weights; features are scaled copies of the base level.
constexpr double kFeatureWeight[3] = {1.0, 0.85, 1.15};

// Appends one pattern window built from plateau `levels`, each level held for
// roughly len/|levels| samples with a small upward drift. Hold times are
// jittered per segment so state times vary across windows.
void append_pattern(MultivariateTimeSeries& ts, const std::vector<double>& levels,
                    int len, double noise_std, double duration_jitter, Rng& rng) {
    const int segments = static_cast<int>(levels.size());
    const int base = len / segments;
    int extra = len % segments;
    for (int seg = 0; seg < segments; ++seg) {
        const int nominal = base + (extra-- > 0 ? 1 : 0);
        const double scale = rng.uniform(1.0 - duration_jitter, 1.0 + duration_jitter);
        const int seg_len = std::max(2, static_cast<int>(std::lround(nominal * scale)));
        for (int i = 0; i < seg_len; ++i) {
            const double drift = 0.01 * static_cast<double>(i) / static_cast<double>(seg_len);
            std::vector<double> sample(3);
            for (std::size_t f = 0; f < 3; ++f)
                sample[f] = (levels[static_cast<std::size_t>(seg)] + drift) * kFeatureWeight[f] +
                            rng.gaussian(0.0, noise_std);
            ts.samples.push_back(std::move(sample));
        }
    }
}

} // namespace

SynthResult synth_generate(const SynthSpec& spec) {
    if (spec.cycles_per_class <= 0) throw InvalidSpecError("cycles_per_class must be positive");
    if (spec.noise_std <= 0.0) throw InvalidSpecError("noise_std must be positive");
    if (spec.duration_jitter < 0.0 || spec.duration_jitter >= 1.0)
        throw InvalidSpecError("duration_jitter must lie in [0,1)");
    if (spec.velocity_amplitude <= 0.0) throw InvalidSpecError("velocity_amplitude must be positive");
    // The two fault classes share one plateau-level set and differ only in
    // ordering and hold times, so telling them apart requires the transition
    // structure rather than the amplitude range. The velocity fault zigzags
    // slowly at low amplitude; the weight fault climbs a staircase. Seven
    // distinct levels keep K <= 7 clustering in the merge regime, where the
    // discretization stays consistent across windows.
    // Normal levels interleave with the fault levels: training sets that a
    // weak detector contaminates with normal windows then burn clustering
    // budget on foreign plateaus and coarsen the fault's own discretization.
    const std::vector<double> normal_levels = {0.10, 0.60, 0.30, 0.70, 0.50, 0.75, 0.40};
    const std::vector<double> velocity_base = {0.05, 0.45, 0.15, 0.55, 0.25, 0.65, 0.35};
    const std::vector<double> weight_levels = {0.05, 0.15, 0.25, 0.35, 0.45, 0.55, 0.65};
    if (spec.normal_len < static_cast<int>(normal_levels.size()) ||
        spec.velocity_len < static_cast<int>(velocity_base.size()) ||
        spec.weight_len < static_cast<int>(weight_levels.size()))
        throw InvalidSpecError("pattern length shorter than its plateau count");

    std::vector<double> velocity_levels(velocity_base.size());
    for (std::size_t i = 0; i < velocity_base.size(); ++i)
        velocity_levels[i] = 2.0 * velocity_base[i] * spec.velocity_amplitude;

    SynthResult out;
    out.series.sampling_rate_hz = 10.0;
    out.series.feature_names = {"x_acc", "y_acc", "z_acc"};
    Rng rng(spec.seed);

    auto emit = [&](const std::vector<double>& levels, int len, const char* label) {
        const std::size_t start = out.series.size();
        append_pattern(out.series, levels, len, spec.noise_std, spec.duration_jitter, rng);
        TimeSeriesWindow w;
        w.parent_id = "synth";
        w.start = start;
        w.end = out.series.size() - 1;
        w.label = label;
        w.samples.assign(out.series.samples.begin() + static_cast<std::ptrdiff_t>(start),
                         out.series.samples.end());
        out.windows.push_back(std::move(w));
    };

    for (int c = 0; c < spec.cycles_per_class; ++c) {
        emit(normal_levels, spec.normal_len, kNormalLabel);
        emit(velocity_levels, spec.velocity_len, kVelocityLabel);
        emit(normal_levels, spec.normal_len, kNormalLabel);
        emit(weight_levels, spec.weight_len, kWeightLabel);
    }
    return out;
}

std::pair<std::vector<TimeSeriesWindow>, std::vector<TimeSeriesWindow>>
split_holdout(const std::vector<TimeSeriesWindow>& windows, double train_fraction,
              std::uint64_t seed) {
    if (windows.empty()) throw EmptyInputError("no windows to split");
    std::vector<std::size_t> idx(windows.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    Rng rng(seed);
    for (std::size_t i = idx.size(); i > 1; --i)
        std::swap(idx[i - 1], idx[rng.uniform_index(i)]);
    const auto n_train = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(windows.size())));
    std::pair<std::vector<TimeSeriesWindow>, std::vector<TimeSeriesWindow>> out;
    for (std::size_t i = 0; i < idx.size(); ++i)
        (i < n_train ? out.first : out.second).push_back(windows[idx[i]]);
    return out;
}

} // namespace pmfd
