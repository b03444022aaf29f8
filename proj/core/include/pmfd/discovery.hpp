#ifndef PMFD_DISCOVERY_HPP
#define PMFD_DISCOVERY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pmfd/eventlog.hpp"
#include "pmfd/petri.hpp"

namespace pmfd {

/// Frequency graph of adjacent activity pairs. Activities are referenced by
/// index into `activities`, which is sorted lexicographically.
struct DirectlyFollowsGraph {
    std::vector<std::string> activities;
    std::map<std::pair<int, int>, std::size_t> edge_freq;
    std::map<int, std::size_t> start_freq;
    std::map<int, std::size_t> end_freq;
};

/// Throws EmptyLogError.
DirectlyFollowsGraph build_dfg(const EventLog& log);

struct ProcessTree {
    enum class Op { Activity, Silent, Sequence, Exclusive, Parallel, Loop };
    Op op = Op::Silent;
    std::string activity; // for Op::Activity
    std::vector<ProcessTree> children;

    static ProcessTree leaf(std::string activity);
    static ProcessTree silent();
    static ProcessTree node(Op op, std::vector<ProcessTree> children);

    /// Parenthesized text form, e.g. seq(a, xor(b, tau)).
    std::string to_string() const;
};

/// Inductive miner with frequency-based noise filtering. Cut detection runs
/// on the directly-follows graph of each sublog after dropping edges whose
/// frequency is below noise_threshold times the strongest outgoing edge of
/// their source; cuts are tried in the order exclusive, sequence, parallel,
/// loop, with a flower model as fall-through. At threshold 0 every trace of
/// the log is replayable on the resulting tree. Throws EmptyLogError.
ProcessTree inductive_miner(const EventLog& log, double noise_threshold);

/// Standard recursive conversion; the result is always a sound workflow net.
PetriNet tree_to_petri(const ProcessTree& tree);

/// Heuristics miner: dependency graph thresholding with length-1/length-2
/// loop handling, AND/XOR split-join bindings by co-occurrence, and a causal
/// net to Petri net conversion with silent routing transitions. Artificial
/// start/end transitions make the result a workflow net (not necessarily
/// sound). Throws EmptyLogError.
PetriNet heuristics_miner(const EventLog& log, double dependency_threshold,
                          double and_threshold);

} // namespace pmfd

#endif
