#include "pmfd/detect.hpp"

#include <algorithm>
#include <cmath>

#include "pmfd/errors.hpp"
#include "pmfd/rng.hpp"

namespace pmfd {

std::vector<TimeSeriesWindow> threshold_detect(const MultivariateTimeSeries& ts,
                                               std::size_t window_len, double threshold) {
    if (window_len == 0) throw EmptyInputError("window_len must be positive");
    if (window_len > ts.size()) throw WindowTooLongError(window_len, ts.size());

    const std::size_t p = ts.dim();
    const std::size_t n = ts.size();
    std::vector<double> mean(p, 0.0), sd(p, 0.0);
    for (const auto& s : ts.samples)
        for (std::size_t f = 0; f < p; ++f) mean[f] += s[f];
    for (std::size_t f = 0; f < p; ++f) mean[f] /= static_cast<double>(n);
    for (const auto& s : ts.samples)
        for (std::size_t f = 0; f < p; ++f) sd[f] += (s[f] - mean[f]) * (s[f] - mean[f]);
    for (std::size_t f = 0; f < p; ++f) sd[f] = std::sqrt(sd[f] / static_cast<double>(n));

    const std::size_t n_tiles = n / window_len;
    std::vector<bool> flagged(n_tiles, false);
    for (std::size_t tile = 0; tile < n_tiles; ++tile) {
        double energy = 0.0;
        for (std::size_t i = tile * window_len; i < (tile + 1) * window_len; ++i) {
            for (std::size_t f = 0; f < p; ++f) {
                const double z = sd[f] > 0.0 ? (ts.samples[i][f] - mean[f]) / sd[f] : 0.0;
                energy += z * z;
            }
        }
        energy /= static_cast<double>(window_len * p);
        flagged[tile] = energy > threshold;
    }

    std::vector<TimeSeriesWindow> out;
    std::size_t tile = 0;
    while (tile < n_tiles) {
        if (!flagged[tile]) { ++tile; continue; }
        std::size_t last = tile;
        while (last + 1 < n_tiles && flagged[last + 1]) ++last;
        out.push_back(slice_window(ts, "detected", tile * window_len,
                                   (last + 1) * window_len - 1, "anomaly"));
        tile = last + 1;
    }
    return out;
}

std::vector<TimeSeriesWindow> compose_training_set(const LabeledWindowPool& pool, double acc,
                                                   std::size_t n, std::uint64_t seed) {
    if (acc <= 0.0 || acc > 1.0) throw EmptyInputError("acc must be in (0,1]");
    if (n == 0) throw EmptyInputError("n must be positive");
    const auto n_pos = static_cast<std::size_t>(std::llround(acc * static_cast<double>(n)));
    const std::size_t n_neg = n - n_pos;
    if (pool.positives.size() < n)
        throw InsufficientPoolError("need " + std::to_string(n) + " positives, have " +
                                    std::to_string(pool.positives.size()));
    if (pool.negatives.size() < n_neg)
        throw InsufficientPoolError("need " + std::to_string(n_neg) + " negatives, have " +
                                    std::to_string(pool.negatives.size()));

    // Sample k indices without replacement, then restore pool order.
    auto pick = [](std::size_t total, std::size_t k, Rng& rng) {
        std::vector<std::size_t> idx(total);
        for (std::size_t i = 0; i < total; ++i) idx[i] = i;
        for (std::size_t i = total; i > 1; --i) std::swap(idx[i - 1], idx[rng.uniform_index(i)]);
        idx.resize(k);
        std::sort(idx.begin(), idx.end());
        return idx;
    };

    Rng rng(seed);
    Rng pos_rng = rng.derive(0);
    Rng neg_rng = rng.derive(1);
    std::vector<TimeSeriesWindow> out;
    out.reserve(n);
    for (const auto i : pick(pool.positives.size(), n_pos, pos_rng))
        out.push_back(pool.positives[i]);
    for (const auto i : pick(pool.negatives.size(), n_neg, neg_rng))
        out.push_back(pool.negatives[i]);
    return out;
}

double detection_accuracy(std::size_t tp, std::size_t tn, std::size_t fp, std::size_t fn) {
    const auto total = static_cast<double>(tp + tn + fp + fn);
    return total > 0.0 ? static_cast<double>(tp + tn) / total : 0.0;
}

} // namespace pmfd
