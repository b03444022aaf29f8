#ifndef PMFD_CONFORMANCE_HPP
#define PMFD_CONFORMANCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pmfd/petri.hpp"

namespace pmfd {

/// One alignment move; a disengaged side is a "no move" (>>).
struct AlignmentMove {
    std::optional<std::string> log_label;      // trace activity, or >>
    std::optional<std::size_t> model_transition; // transition index, or >>

    bool synchronous() const { return log_label && model_transition; }
};

struct Alignment {
    std::vector<AlignmentMove> moves;
    std::size_t cost = 0;
    bool optimal = true;
};

struct AlignOptions {
    std::size_t node_budget = 1000000;
    double time_limit_s = 300.0;
};

/// Minimal-cost alignment via A* over the synchronous product. Unit costs:
/// synchronous and silent model moves are free, visible model-only and
/// log-only moves cost 1. The heuristic counts remaining trace labels that
/// the model cannot produce at all.
/// Throws UnsoundModelError (final marking unreachable),
/// SearchBudgetExceededError, AlignTimeoutError.
Alignment align(const std::vector<std::string>& trace, const PetriNet& net,
                const AlignOptions& options = {});

/// Move list as JSON, ">>" for no-moves; for debugging alignments.
std::string alignment_to_json(const Alignment& alignment, const PetriNet& net);

/// Fewest visible transitions in any complete firing sequence.
/// Throws UnsoundModelError if the final marking is unreachable.
std::size_t shortest_visible_completion(const PetriNet& net, std::size_t marking_budget = 100000);

/// |trace| log moves plus the shortest visible completion of the net.
std::size_t worst_alignment_cost(const std::vector<std::string>& trace, const PetriNet& net);

/// 1 - optimal / worst; 1 when both are zero (empty trace on a silent net).
double fitness(const std::vector<std::string>& trace, const PetriNet& net,
               const AlignOptions& options = {});

/// Resamples a window to n samples by nearest-index hold.
std::vector<std::vector<double>> resample_hold(const std::vector<std::vector<double>>& samples,
                                               std::size_t n);

/// Root mean squared error per feature, averaged over features; the simulated
/// window is resampled to the observed length. Throws DimensionMismatchError.
double rmse(const std::vector<std::vector<double>>& observed,
            const std::vector<std::vector<double>>& simulated);

/// Coefficient of determination per feature, averaged over features with
/// non-zero observed variance. Throws ZeroVarianceObservedError.
double r2(const std::vector<std::vector<double>>& observed,
          const std::vector<std::vector<double>>& simulated);

} // namespace pmfd

#endif
