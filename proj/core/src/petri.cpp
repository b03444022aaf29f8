#include "pmfd/petri.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "pmfd/errors.hpp"

namespace pmfd {

PetriNet::PetriNet(std::vector<std::string> places, std::vector<TransitionDef> transitions,
                   std::vector<std::pair<std::string, std::string>> arcs,
                   const std::map<std::string, std::uint32_t>& initial,
                   const std::map<std::string, std::uint32_t>& final_marking)
    : places_(std::move(places)), transitions_(std::move(transitions)), arcs_(std::move(arcs)) {
    for (std::size_t i = 0; i < places_.size(); ++i) {
        if (!place_by_id_.emplace(places_[i], i).second)
            throw NetStructureError("duplicate place id: " + places_[i]);
    }
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
        if (place_by_id_.count(transitions_[i].id))
            throw NetStructureError("id used for both place and transition: " + transitions_[i].id);
        if (!transition_by_id_.emplace(transitions_[i].id, i).second)
            throw NetStructureError("duplicate transition id: " + transitions_[i].id);
        if (!transitions_[i].label.empty()) by_label_[transitions_[i].label].push_back(i);
    }
    pre_.resize(transitions_.size());
    post_.resize(transitions_.size());
    for (const auto& [from, to] : arcs_) {
        const auto fp = place_by_id_.find(from);
        const auto tp = place_by_id_.find(to);
        const auto ft = transition_by_id_.find(from);
        const auto tt = transition_by_id_.find(to);
        if (fp != place_by_id_.end() && tt != transition_by_id_.end()) {
            pre_[tt->second].push_back(fp->second);
        } else if (ft != transition_by_id_.end() && tp != place_by_id_.end()) {
            post_[ft->second].push_back(tp->second);
        } else {
            throw NetStructureError("arc must connect a place and a transition: " + from +
                                    " -> " + to);
        }
    }
    for (auto& v : pre_) std::sort(v.begin(), v.end());
    for (auto& v : post_) std::sort(v.begin(), v.end());

    auto build_marking = [&](const std::map<std::string, std::uint32_t>& tokens) {
        Marking m(places_.size(), 0);
        for (const auto& [id, count] : tokens) {
            const auto it = place_by_id_.find(id);
            if (it == place_by_id_.end())
                throw NetStructureError("marking references unknown place: " + id);
            m[it->second] = count;
        }
        return m;
    };
    initial_ = build_marking(initial);
    final_ = build_marking(final_marking);
}

std::size_t PetriNet::place_index(const std::string& id) const {
    const auto it = place_by_id_.find(id);
    if (it == place_by_id_.end()) throw NetStructureError("unknown place: " + id);
    return it->second;
}

std::size_t PetriNet::transition_index(const std::string& id) const {
    const auto it = transition_by_id_.find(id);
    if (it == transition_by_id_.end()) throw NetStructureError("unknown transition: " + id);
    return it->second;
}

const std::vector<std::size_t>& PetriNet::transitions_with_label(const std::string& label) const {
    const auto it = by_label_.find(label);
    return it == by_label_.end() ? no_transitions_ : it->second;
}

Marking marking_from(const PetriNet& net, const std::map<std::string, std::uint32_t>& tokens) {
    Marking m(net.n_places(), 0);
    for (const auto& [id, count] : tokens) m[net.place_index(id)] = count;
    return m;
}

bool is_enabled(const PetriNet& net, const Marking& m, std::size_t t) {
    for (const auto p : net.inputs(t))
        if (m[p] == 0) return false;
    return true;
}

std::vector<std::size_t> enabled_transitions(const PetriNet& net, const Marking& m) {
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t < net.n_transitions(); ++t)
        if (is_enabled(net, m, t)) out.push_back(t);
    return out;
}

Marking fire(const PetriNet& net, const Marking& m, std::size_t t) {
    if (!is_enabled(net, m, t)) throw NotEnabledError(net.transition_id(t));
    Marking out = m;
    for (const auto p : net.inputs(t)) --out[p];
    for (const auto p : net.outputs(t)) ++out[p];
    return out;
}

namespace {

struct NodeRef {
    bool is_place;
    std::size_t index;
    bool operator==(const NodeRef&) const = default;
};

// in/out degree per node over the arc list
void node_degrees(const PetriNet& net, std::vector<std::size_t>& place_deg,
                  std::vector<std::size_t>& trans_deg) {
    place_deg.assign(net.n_places(), 0);
    trans_deg.assign(net.n_transitions(), 0);
    for (std::size_t t = 0; t < net.n_transitions(); ++t) {
        trans_deg[t] = net.inputs(t).size() + net.outputs(t).size();
        for (const auto p : net.inputs(t)) ++place_deg[p];
        for (const auto p : net.outputs(t)) ++place_deg[p];
    }
}

struct MarkingHash {
    std::size_t operator()(const Marking& m) const {
        std::size_t h = 1469598103934665603ull;
        for (const auto v : m) {
            h ^= v + 0x9e3779b9ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

} // namespace

bool is_workflow_net(const PetriNet& net) {
    if (net.n_places() == 0 || net.n_transitions() == 0) return false;
    std::vector<std::size_t> place_in(net.n_places(), 0), place_out(net.n_places(), 0);
    for (std::size_t t = 0; t < net.n_transitions(); ++t) {
        if (net.inputs(t).empty() || net.outputs(t).empty()) return false;
        for (const auto p : net.inputs(t)) ++place_out[p];
        for (const auto p : net.outputs(t)) ++place_in[p];
    }
    std::size_t source = net.n_places(), sink = net.n_places();
    for (std::size_t p = 0; p < net.n_places(); ++p) {
        if (place_in[p] == 0) {
            if (source != net.n_places()) return false;
            source = p;
        }
        if (place_out[p] == 0) {
            if (sink != net.n_places()) return false;
            sink = p;
        }
    }
    if (source == net.n_places() || sink == net.n_places() || source == sink) return false;

    // every node on a path source -> sink
    const std::size_t n_nodes = net.n_places() + net.n_transitions();
    auto place_node = [](std::size_t p) { return p; };
    auto trans_node = [&](std::size_t t) { return net.n_places() + t; };
    std::vector<std::vector<std::size_t>> fwd(n_nodes), bwd(n_nodes);
    for (std::size_t t = 0; t < net.n_transitions(); ++t) {
        for (const auto p : net.inputs(t)) {
            fwd[place_node(p)].push_back(trans_node(t));
            bwd[trans_node(t)].push_back(place_node(p));
        }
        for (const auto p : net.outputs(t)) {
            fwd[trans_node(t)].push_back(place_node(p));
            bwd[place_node(p)].push_back(trans_node(t));
        }
    }
    auto reach = [&](std::size_t from, const std::vector<std::vector<std::size_t>>& adj) {
        std::vector<bool> seen(n_nodes, false);
        std::deque<std::size_t> queue{from};
        seen[from] = true;
        while (!queue.empty()) {
            const auto u = queue.front();
            queue.pop_front();
            for (const auto v : adj[u])
                if (!seen[v]) {
                    seen[v] = true;
                    queue.push_back(v);
                }
        }
        return seen;
    };
    const auto from_source = reach(place_node(source), fwd);
    const auto to_sink = reach(place_node(sink), bwd);
    for (std::size_t i = 0; i < n_nodes; ++i)
        if (!from_source[i] || !to_sink[i]) return false;
    return true;
}

SoundnessResult check_soundness(const PetriNet& net, std::size_t marking_budget) {
    SoundnessResult res;
    if (!is_workflow_net(net)) {
        res.verdict = SoundnessResult::Verdict::Unsound;
        res.reason = "NotWorkflow";
        return res;
    }
    const Marking& mf = net.final_marking();

    // forward exploration
    std::unordered_map<Marking, std::size_t, MarkingHash> index;
    std::vector<Marking> markings;
    std::vector<std::vector<std::size_t>> succ; // state graph edges
    std::vector<std::vector<std::size_t>> pred;
    std::vector<bool> fired(net.n_transitions(), false);

    auto intern = [&](const Marking& m) -> std::size_t {
        const auto it = index.find(m);
        if (it != index.end()) return it->second;
        const std::size_t id = markings.size();
        index.emplace(m, id);
        markings.push_back(m);
        succ.emplace_back();
        pred.emplace_back();
        return id;
    };

    intern(net.initial_marking());
    for (std::size_t i = 0; i < markings.size(); ++i) {
        if (markings.size() > marking_budget) {
            res.verdict = SoundnessResult::Verdict::Unknown;
            res.reason = "BudgetExhausted";
            return res;
        }
        const Marking m = markings[i];
        for (std::size_t t = 0; t < net.n_transitions(); ++t) {
            if (!is_enabled(net, m, t)) continue;
            fired[t] = true;
            const auto j = intern(fire(net, m, t));
            succ[i].push_back(j);
            pred[j].push_back(i);
        }
    }

    // proper completion: no reachable marking strictly covers the final one
    std::size_t final_id = markings.size();
    for (std::size_t i = 0; i < markings.size(); ++i) {
        const auto& m = markings[i];
        if (m == mf) {
            final_id = i;
            continue;
        }
        bool covers = true;
        for (std::size_t p = 0; p < m.size(); ++p)
            if (m[p] < mf[p]) { covers = false; break; }
        if (covers) {
            res.verdict = SoundnessResult::Verdict::Unsound;
            res.reason = "ImproperCompletion";
            return res;
        }
    }
    if (final_id == markings.size()) {
        res.verdict = SoundnessResult::Verdict::Unsound;
        res.reason = "NoOptionToComplete";
        return res;
    }

    // option to complete: every reachable marking can still reach the final one
    std::vector<bool> can_finish(markings.size(), false);
    std::deque<std::size_t> queue{final_id};
    can_finish[final_id] = true;
    while (!queue.empty()) {
        const auto i = queue.front();
        queue.pop_front();
        for (const auto j : pred[i])
            if (!can_finish[j]) {
                can_finish[j] = true;
                queue.push_back(j);
            }
    }
    for (std::size_t i = 0; i < markings.size(); ++i) {
        if (!can_finish[i]) {
            res.verdict = SoundnessResult::Verdict::Unsound;
            res.reason = "NoOptionToComplete";
            return res;
        }
    }

    for (std::size_t t = 0; t < net.n_transitions(); ++t) {
        if (!fired[t]) {
            res.verdict = SoundnessResult::Verdict::Unsound;
            res.reason = "DeadTransition:" + net.transition_id(t);
            return res;
        }
    }

    res.verdict = SoundnessResult::Verdict::Sound;
    return res;
}

double arc_degree_simplicity(const PetriNet& net) {
    std::vector<std::size_t> place_deg, trans_deg;
    node_degrees(net, place_deg, trans_deg);
    std::size_t total = 0;
    for (std::size_t p = 0; p < place_deg.size(); ++p) {
        if (place_deg[p] == 0) throw IsolatedNodeError(net.place_id(p));
        total += place_deg[p];
    }
    for (std::size_t t = 0; t < trans_deg.size(); ++t) {
        if (trans_deg[t] == 0) throw IsolatedNodeError(net.transition_id(t));
        total += trans_deg[t];
    }
    const auto n_nodes = static_cast<double>(place_deg.size() + trans_deg.size());
    if (n_nodes == 0.0) throw IsolatedNodeError("(empty net)");
    const double mean = static_cast<double>(total) / n_nodes;
    // Mean degree below 2 (chain boundary nodes) does not count as complexity,
    // so the score stays in (0, 1] and a pure chain scores exactly 1.
    return 1.0 / (1.0 + std::max(mean - 2.0, 0.0));
}

std::string export_dot(const PetriNet& net) {
    std::ostringstream out;
    out << "digraph petri_net {\n";
    out << "  rankdir=LR;\n";
    for (std::size_t p = 0; p < net.n_places(); ++p) {
        out << "  \"" << net.place_id(p) << "\" [shape=circle, label=\"";
        if (net.initial_marking()[p] > 0)
            out << "&bull;";
        out << "\", xlabel=\"" << net.place_id(p) << "\"];\n";
    }
    for (std::size_t t = 0; t < net.n_transitions(); ++t) {
        if (net.is_silent(t)) {
            out << "  \"" << net.transition_id(t)
                << "\" [shape=box, style=filled, fillcolor=black, label=\"\"];\n";
        } else {
            out << "  \"" << net.transition_id(t) << "\" [shape=box, label=\"" << net.label(t)
                << "\"];\n";
        }
    }
    for (const auto& [from, to] : net.arcs())
        out << "  \"" << from << "\" -> \"" << to << "\";\n";
    out << "}\n";
    return out.str();
}

std::string net_to_json(const PetriNet& net) {
    nlohmann::json j;
    j["places"] = nlohmann::json::array();
    for (std::size_t p = 0; p < net.n_places(); ++p) j["places"].push_back(net.place_id(p));
    j["transitions"] = nlohmann::json::array();
    for (std::size_t t = 0; t < net.n_transitions(); ++t)
        j["transitions"].push_back({{"id", net.transition_id(t)}, {"label", net.label(t)}});
    j["arcs"] = nlohmann::json::array();
    for (const auto& [from, to] : net.arcs()) j["arcs"].push_back({from, to});
    auto marking_json = [&](const Marking& m) {
        nlohmann::json mj = nlohmann::json::object();
        for (std::size_t p = 0; p < m.size(); ++p)
            if (m[p] > 0) mj[net.place_id(p)] = m[p];
        return mj;
    };
    j["m0"] = marking_json(net.initial_marking());
    j["mf"] = marking_json(net.final_marking());
    return j.dump(2);
}

PetriNet net_from_json(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    std::vector<std::string> places;
    for (const auto& p : j.at("places")) places.push_back(p.get<std::string>());
    std::vector<TransitionDef> transitions;
    for (const auto& t : j.at("transitions"))
        transitions.push_back({t.at("id").get<std::string>(), t.at("label").get<std::string>()});
    std::vector<std::pair<std::string, std::string>> arcs;
    for (const auto& a : j.at("arcs"))
        arcs.emplace_back(a.at(0).get<std::string>(), a.at(1).get<std::string>());
    std::map<std::string, std::uint32_t> m0, mf;
    for (const auto& [id, count] : j.at("m0").items()) m0[id] = count.get<std::uint32_t>();
    for (const auto& [id, count] : j.at("mf").items()) mf[id] = count.get<std::uint32_t>();
    return PetriNet(std::move(places), std::move(transitions), std::move(arcs), m0, mf);
}

} // namespace pmfd
