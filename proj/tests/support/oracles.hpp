#ifndef PMFD_TEST_ORACLES_HPP
#define PMFD_TEST_ORACLES_HPP

// Independent reference implementations used to cross-check the library.
// These deliberately share no code with the implementation paths they verify.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pmfd/petri.hpp"

namespace pmfd::test {

/// Plain Dijkstra over the full synchronous product, no heuristic, no
/// shortcuts. Returns the minimal alignment cost (unit cost model).
std::size_t brute_force_alignment_cost(const std::vector<std::string>& trace,
                                       const PetriNet& net, std::size_t state_cap = 200000);

/// Replays a visible-label trace through the token game, bridging with
/// silent transitions (breadth-first closure). True iff the whole trace fires
/// and the final marking is reachable afterwards through silent moves only.
bool replay_to_final(const std::vector<std::string>& trace, const PetriNet& net);

// direct formula recomputations (equal-length windows)
double direct_rmse(const std::vector<std::vector<double>>& a,
                   const std::vector<std::vector<double>>& b);
std::optional<double> direct_r2(const std::vector<std::vector<double>>& observed,
                                const std::vector<std::vector<double>>& simulated);
/// Recounts node degrees straight from the arc list.
double direct_arc_degree_simplicity(const PetriNet& net);
double direct_accuracy(std::size_t tp, std::size_t tn, std::size_t fp, std::size_t fn);
double direct_f1(std::size_t tp, std::size_t fp, std::size_t fn);

} // namespace pmfd::test

#endif
