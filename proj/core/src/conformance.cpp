#include "pmfd/conformance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <set>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "pmfd/errors.hpp"

namespace pmfd {

namespace {

struct ProductState {
    std::size_t trace_pos;
    Marking marking;
    bool operator==(const ProductState&) const = default;
};

struct ProductStateHash {
    std::size_t operator()(const ProductState& s) const {
        std::size_t h = s.trace_pos * 1099511628211ull;
        for (const auto v : s.marking) h ^= v + 0x9e3779b9ull + (h << 6) + (h >> 2);
        return h;
    }
};

struct QueueEntry {
    std::size_t f;
    std::size_t g;
    std::uint64_t order; // push counter, makes expansion order deterministic
    std::size_t state_id;
};

struct QueueCompare {
    bool operator()(const QueueEntry& a, const QueueEntry& b) const {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g < b.g; // prefer deeper states on equal f
        return a.order > b.order;
    }
};

} // namespace

Alignment align(const std::vector<std::string>& trace, const PetriNet& net,
                const AlignOptions& options) {
    const auto start_time = std::chrono::steady_clock::now();

    // h(state) = number of remaining trace labels the net cannot produce;
    // each of those costs at least one log move
    std::vector<std::size_t> h_remaining(trace.size() + 1, 0);
    for (std::size_t i = trace.size(); i-- > 0;) {
        const bool in_model = !net.transitions_with_label(trace[i]).empty();
        h_remaining[i] = h_remaining[i + 1] + (in_model ? 0 : 1);
    }

    struct NodeInfo {
        std::size_t g;
        std::size_t parent;
        AlignmentMove move;
        bool closed;
    };
    std::unordered_map<ProductState, std::size_t, ProductStateHash> index;
    std::vector<ProductState> states;
    std::vector<NodeInfo> info;
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueCompare> open;
    std::uint64_t order = 0;

    auto intern = [&](ProductState s) {
        const auto it = index.find(s);
        if (it != index.end()) return it->second;
        const std::size_t id = states.size();
        index.emplace(s, id);
        states.push_back(std::move(s));
        info.push_back({std::numeric_limits<std::size_t>::max(), 0, {}, false});
        return id;
    };
    auto relax = [&](std::size_t id, std::size_t g, std::size_t parent, AlignmentMove move) {
        if (g < info[id].g) {
            info[id] = {g, parent, std::move(move), false};
            open.push({g + h_remaining[states[id].trace_pos], g, order++, id});
        }
    };

    const auto root = intern({0, net.initial_marking()});
    info[root].g = 0;
    open.push({h_remaining[0], 0, order++, root});

    std::size_t expanded = 0;
    while (!open.empty()) {
        const auto entry = open.top();
        open.pop();
        const auto id = entry.state_id;
        if (info[id].closed || entry.g != info[id].g) continue;
        info[id].closed = true;

        const auto state = states[id]; // copy: states may reallocate below
        if (state.trace_pos == trace.size() && state.marking == net.final_marking()) {
            Alignment result;
            result.cost = info[id].g;
            std::size_t cur = id;
            while (cur != root) {
                result.moves.push_back(info[cur].move);
                cur = info[cur].parent;
            }
            std::reverse(result.moves.begin(), result.moves.end());
            return result;
        }

        if (++expanded > options.node_budget)
            throw SearchBudgetExceededError(options.node_budget);
        if ((expanded & 0x3ff) == 0) {
            const std::chrono::duration<double> elapsed =
                std::chrono::steady_clock::now() - start_time;
            if (elapsed.count() > options.time_limit_s)
                throw AlignTimeoutError(options.time_limit_s);
        }

        const std::size_t g = info[id].g;
        // synchronous moves, then model moves, in transition order
        for (std::size_t t = 0; t < net.n_transitions(); ++t) {
            if (!is_enabled(net, state.marking, t)) continue;
            auto next_marking = fire(net, state.marking, t);
            if (state.trace_pos < trace.size() && !net.is_silent(t) &&
                net.label(t) == trace[state.trace_pos]) {
                const auto nid = intern({state.trace_pos + 1, next_marking});
                relax(nid, g, id, {trace[state.trace_pos], t});
            }
            const std::size_t move_cost = net.is_silent(t) ? 0 : 1;
            const auto nid = intern({state.trace_pos, std::move(next_marking)});
            relax(nid, g + move_cost, id, {std::nullopt, t});
        }
        if (state.trace_pos < trace.size()) { // log move
            const auto nid = intern({state.trace_pos + 1, state.marking});
            relax(nid, g + 1, id, {trace[state.trace_pos], std::nullopt});
        }
    }
    throw UnsoundModelError("final marking unreachable during alignment");
}

std::string alignment_to_json(const Alignment& alignment, const PetriNet& net) {
    nlohmann::json j;
    j["cost"] = alignment.cost;
    j["optimal"] = alignment.optimal;
    j["moves"] = nlohmann::json::array();
    for (const auto& m : alignment.moves) {
        nlohmann::json jm;
        jm["log"] = m.log_label ? *m.log_label : ">>";
        if (m.model_transition) {
            jm["model"] = net.transition_id(*m.model_transition);
            jm["label"] = net.is_silent(*m.model_transition) ? "tau" : net.label(*m.model_transition);
        } else {
            jm["model"] = ">>";
        }
        j["moves"].push_back(std::move(jm));
    }
    return j.dump(2);
}

std::size_t shortest_visible_completion(const PetriNet& net, std::size_t marking_budget) {
    // Dijkstra over markings, edge cost 1 for visible and 0 for silent firings
    std::unordered_map<Marking, std::size_t,
                       decltype([](const Marking& m) {
                           std::size_t h = 1469598103934665603ull;
                           for (const auto v : m) h ^= v + 0x9e3779b9ull + (h << 6) + (h >> 2);
                           return h;
                       })>
        dist;
    using Entry = std::pair<std::size_t, Marking>;
    const auto cmp = [](const Entry& a, const Entry& b) { return a.first > b.first; };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> open(cmp);
    dist[net.initial_marking()] = 0;
    open.push({0, net.initial_marking()});
    while (!open.empty()) {
        const auto [d, m] = open.top();
        open.pop();
        const auto it = dist.find(m);
        if (it != dist.end() && it->second < d) continue;
        if (m == net.final_marking()) return d;
        if (dist.size() > marking_budget)
            throw UnsoundModelError("marking budget exhausted before reaching the final marking");
        for (std::size_t t = 0; t < net.n_transitions(); ++t) {
            if (!is_enabled(net, m, t)) continue;
            auto next = fire(net, m, t);
            const std::size_t nd = d + (net.is_silent(t) ? 0 : 1);
            const auto dit = dist.find(next);
            if (dit == dist.end() || nd < dit->second) {
                dist[next] = nd;
                open.push({nd, std::move(next)});
            }
        }
    }
    throw UnsoundModelError("final marking unreachable");
}

std::size_t worst_alignment_cost(const std::vector<std::string>& trace, const PetriNet& net) {
    return trace.size() + shortest_visible_completion(net);
}

double fitness(const std::vector<std::string>& trace, const PetriNet& net,
               const AlignOptions& options) {
    const auto worst = worst_alignment_cost(trace, net);
    if (worst == 0) return 1.0; // empty trace on a net completing silently
    const auto best = align(trace, net, options).cost;
    return 1.0 - static_cast<double>(best) / static_cast<double>(worst);
}

std::vector<std::vector<double>> resample_hold(const std::vector<std::vector<double>>& samples,
                                               std::size_t n) {
    std::vector<std::vector<double>> out;
    out.reserve(n);
    const std::size_t m = samples.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = 0;
        if (n > 1 && m > 1)
            j = static_cast<std::size_t>(std::llround(static_cast<double>(i) *
                                                      static_cast<double>(m - 1) /
                                                      static_cast<double>(n - 1)));
        out.push_back(samples[std::min(j, m - 1)]);
    }
    return out;
}

double rmse(const std::vector<std::vector<double>>& observed,
            const std::vector<std::vector<double>>& simulated) {
    if (observed.empty() || simulated.empty()) throw EmptyInputError("rmse needs two windows");
    const std::size_t p = observed.front().size();
    if (simulated.front().size() != p) throw DimensionMismatchError(simulated.front().size(), p);
    const auto sim = resample_hold(simulated, observed.size());
    const auto n = static_cast<double>(observed.size());
    double sum = 0.0;
    for (std::size_t f = 0; f < p; ++f) {
        double sq = 0.0;
        for (std::size_t i = 0; i < observed.size(); ++i) {
            const double d = observed[i][f] - sim[i][f];
            sq += d * d;
        }
        sum += std::sqrt(sq / n);
    }
    return sum / static_cast<double>(p);
}

double r2(const std::vector<std::vector<double>>& observed,
          const std::vector<std::vector<double>>& simulated) {
    if (observed.empty() || simulated.empty()) throw EmptyInputError("r2 needs two windows");
    const std::size_t p = observed.front().size();
    if (simulated.front().size() != p) throw DimensionMismatchError(simulated.front().size(), p);
    const auto sim = resample_hold(simulated, observed.size());
    const auto n = static_cast<double>(observed.size());
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t f = 0; f < p; ++f) {
        double mean = 0.0;
        for (std::size_t i = 0; i < observed.size(); ++i) mean += observed[i][f];
        mean /= n;
        double ss_res = 0.0, ss_tot = 0.0;
        for (std::size_t i = 0; i < observed.size(); ++i) {
            const double res = observed[i][f] - sim[i][f];
            const double tot = observed[i][f] - mean;
            ss_res += res * res;
            ss_tot += tot * tot;
        }
        if (ss_tot <= 0.0) continue; // constant observed feature: skipped
        sum += 1.0 - ss_res / ss_tot;
        ++used;
    }
    if (used == 0) throw ZeroVarianceObservedError();
    return sum / static_cast<double>(used);
}

} // namespace pmfd
