#ifndef PMFD_TEST_FIXTURES_HPP
#define PMFD_TEST_FIXTURES_HPP

#include <string>
#include <vector>

#include "pmfd/discovery.hpp"
#include "pmfd/eventlog.hpp"
#include "pmfd/petri.hpp"
#include "pmfd/rng.hpp"

namespace pmfd::test {

/// The illustrative workflow net used throughout: tr1 fans out to three
/// parallel branches (tr2 with a silent redo loop, tr3, tr4->tr5) that a
/// silent join merges ahead of tr6.
inline PetriNet fig2_net() {
    return PetriNet(
        {"source", "p1", "p2", "p3", "p4", "p5", "p6", "p7", "p8", "sink"},
        {{"tr1", "tr1"},
         {"tr2", "tr2"},
         {"tr3", "tr3"},
         {"tr4", "tr4"},
         {"tr5", "tr5"},
         {"tau_redo", ""},
         {"tau_join", ""},
         {"tr6", "tr6"}},
        {{"source", "tr1"},
         {"tr1", "p1"},
         {"tr1", "p2"},
         {"tr1", "p3"},
         {"p1", "tr2"},
         {"tr2", "p4"},
         {"p4", "tau_redo"},
         {"tau_redo", "p1"},
         {"p2", "tr3"},
         {"tr3", "p5"},
         {"p3", "tr4"},
         {"tr4", "p6"},
         {"p6", "tr5"},
         {"tr5", "p7"},
         {"p4", "tau_join"},
         {"p5", "tau_join"},
         {"p7", "tau_join"},
         {"tau_join", "p8"},
         {"p8", "tr6"},
         {"tr6", "sink"}},
        {{"source", 1}}, {{"sink", 1}});
}

inline std::vector<std::string> fig4_trace() {
    return {"tr3", "tr1", "tr2", "tr2", "tr3", "tr5", "tr4", "tr4", "tr6"};
}

/// Event log from explicit label traces (labels must parse as "sA->sB").
inline EventLog log_from_labels(const std::vector<std::vector<std::string>>& traces, int k) {
    EventLog log;
    log.k = k;
    log.fault_label = "fixture";
    for (std::size_t i = 0; i < traces.size(); ++i) {
        Case c;
        c.id = "case_" + std::to_string(i);
        std::size_t t = 1;
        for (const auto& label : traces[i]) {
            const auto parsed = parse_activity_label(label);
            Event e;
            e.src = parsed->first;
            e.dst = parsed->second;
            e.timestep = t++;
            e.state_time_s = 0.1;
            c.trace.push_back(e);
        }
        log.cases.push_back(std::move(c));
    }
    return log;
}

/// Event log of chained state transitions from state sequences.
inline EventLog log_from_state_runs(const std::vector<std::vector<int>>& state_seqs, int k) {
    EventLog log;
    log.k = k;
    log.fault_label = "fixture";
    for (std::size_t i = 0; i < state_seqs.size(); ++i) {
        Case c;
        c.id = "case_" + std::to_string(i);
        for (std::size_t j = 1; j < state_seqs[i].size(); ++j) {
            if (state_seqs[i][j] == state_seqs[i][j - 1]) continue;
            Event e;
            e.src = state_seqs[i][j - 1];
            e.dst = state_seqs[i][j];
            e.timestep = j;
            e.state_time_s = 0.1;
            c.trace.push_back(e);
        }
        if (!c.trace.empty()) log.cases.push_back(std::move(c));
    }
    return log;
}

/// Random process tree over activities named like state transitions, so the
/// resulting nets work with the stochastic machinery too.
inline ProcessTree random_tree(Rng& rng, int max_depth, int& label_counter) {
    const auto make_leaf = [&]() {
        const int src = label_counter % 6;
        const int dst = (label_counter % 6 + 1 + label_counter % 5) % 6;
        ++label_counter;
        return ProcessTree::leaf(activity_label(src, dst == src ? (src + 1) % 6 : dst));
    };
    if (max_depth <= 0 || rng.uniform() < 0.35) {
        if (rng.uniform() < 0.15) return ProcessTree::silent();
        return make_leaf();
    }
    const double pick = rng.uniform();
    const auto op = pick < 0.3   ? ProcessTree::Op::Sequence
                    : pick < 0.55 ? ProcessTree::Op::Exclusive
                    : pick < 0.8  ? ProcessTree::Op::Parallel
                                  : ProcessTree::Op::Loop;
    const std::size_t n_children = 2 + rng.uniform_index(2);
    std::vector<ProcessTree> children;
    for (std::size_t i = 0; i < n_children; ++i)
        children.push_back(random_tree(rng, max_depth - 1, label_counter));
    return ProcessTree::node(op, std::move(children));
}

/// Random trace over an alphabet, for conformance stress tests.
inline std::vector<std::string> random_trace(Rng& rng, const std::vector<std::string>& alphabet,
                                             std::size_t max_len) {
    std::vector<std::string> out;
    const std::size_t len = rng.uniform_index(max_len + 1);
    for (std::size_t i = 0; i < len; ++i) {
        if (rng.uniform() < 0.15) {
            out.push_back("s98->s99"); // label absent from any fixture net
        } else if (!alphabet.empty()) {
            out.push_back(alphabet[rng.uniform_index(alphabet.size())]);
        }
    }
    return out;
}

/// Visible alphabet of a net.
inline std::vector<std::string> net_alphabet(const PetriNet& net) {
    std::vector<std::string> out;
    for (std::size_t t = 0; t < net.n_transitions(); ++t)
        if (!net.is_silent(t)) out.push_back(net.label(t));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace pmfd::test

#endif
