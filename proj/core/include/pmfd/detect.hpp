#ifndef PMFD_DETECT_HPP
#define PMFD_DETECT_HPP

#include <cstdint>
#include <vector>

#include "pmfd/timeseries.hpp"

namespace pmfd {

/// Ground-truth labeled material for composing detector-output training sets.
struct LabeledWindowPool {
    std::vector<TimeSeriesWindow> positives; // fault-labeled
    std::vector<TimeSeriesWindow> negatives; // normal
};

/// Baseline collective-anomaly detector: tiles the series into windows of
/// window_len samples, flags tiles whose mean squared z-score exceeds
/// threshold, and merges adjacent flagged tiles into one window.
std::vector<TimeSeriesWindow> threshold_detect(const MultivariateTimeSeries& ts,
                                               std::size_t window_len, double threshold);

/// Builds a training set of n windows simulating a detector running at the
/// given accuracy: round(acc*n) true positives, the rest false positives
/// sampled from the negatives. Selection is seeded and without replacement;
/// selected windows keep their pool order, so acc=1 with n=|positives|
/// returns the positives unchanged.
std::vector<TimeSeriesWindow> compose_training_set(const LabeledWindowPool& pool, double acc,
                                                   std::size_t n, std::uint64_t seed);

/// (TP+TN) / (TP+TN+FP+FN)
double detection_accuracy(std::size_t tp, std::size_t tn, std::size_t fp, std::size_t fn);

} // namespace pmfd

#endif
