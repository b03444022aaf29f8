#include "pmfd/discovery.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

#include "pmfd/errors.hpp"

namespace pmfd {

// ---------------------------------------------------------------------------
// process tree
// ---------------------------------------------------------------------------

ProcessTree ProcessTree::leaf(std::string activity) {
    ProcessTree t;
    t.op = Op::Activity;
    t.activity = std::move(activity);
    return t;
}

ProcessTree ProcessTree::silent() {
    ProcessTree t;
    t.op = Op::Silent;
    return t;
}

ProcessTree ProcessTree::node(Op op, std::vector<ProcessTree> children) {
    ProcessTree t;
    t.op = op;
    t.children = std::move(children);
    return t;
}

std::string ProcessTree::to_string() const {
    switch (op) {
    case Op::Activity: return activity;
    case Op::Silent: return "tau";
    default: break;
    }
    const char* name = op == Op::Sequence ? "seq"
                       : op == Op::Exclusive ? "xor"
                       : op == Op::Parallel ? "and"
                                            : "loop";
    std::ostringstream out;
    out << name << '(';
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (i) out << ", ";
        out << children[i].to_string();
    }
    out << ')';
    return out.str();
}

// ---------------------------------------------------------------------------
// DFG
// ---------------------------------------------------------------------------

namespace {

struct IntLog {
    std::vector<std::string> names; // sorted labels
    std::vector<std::vector<int>> traces;
};

IntLog intern_log(const EventLog& log) {
    if (log.cases.empty()) throw EmptyLogError();
    std::set<std::string> labels;
    for (const auto& c : log.cases)
        for (const auto& e : c.trace) labels.insert(activity_label(e.src, e.dst));
    IntLog out;
    out.names.assign(labels.begin(), labels.end());
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < out.names.size(); ++i)
        index[out.names[i]] = static_cast<int>(i);
    for (const auto& c : log.cases) {
        std::vector<int> t;
        t.reserve(c.trace.size());
        for (const auto& e : c.trace) t.push_back(index[activity_label(e.src, e.dst)]);
        out.traces.push_back(std::move(t));
    }
    return out;
}

struct Dfg {
    std::set<int> alphabet;
    std::map<std::pair<int, int>, std::size_t> edges;
    std::map<int, std::size_t> starts, ends;

    bool has_edge(int a, int b) const { return edges.count({a, b}) > 0; }
};

Dfg build_int_dfg(const std::vector<std::vector<int>>& traces) {
    Dfg g;
    for (const auto& t : traces) {
        if (t.empty()) continue;
        ++g.starts[t.front()];
        ++g.ends[t.back()];
        for (const int a : t) g.alphabet.insert(a);
        for (std::size_t i = 1; i < t.size(); ++i) ++g.edges[{t[i - 1], t[i]}];
    }
    return g;
}

void filter_dfg(Dfg& g, double threshold) {
    if (threshold <= 0.0) return;
    std::map<int, std::size_t> max_out;
    for (const auto& [e, f] : g.edges) max_out[e.first] = std::max(max_out[e.first], f);
    for (auto it = g.edges.begin(); it != g.edges.end();) {
        if (static_cast<double>(it->second) <
            threshold * static_cast<double>(max_out[it->first.first]))
            it = g.edges.erase(it);
        else
            ++it;
    }
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

using Partition = std::vector<std::vector<int>>; // parts of activity ids, each sorted

// ---------------------------------------------------------------------------
// cut detection
// ---------------------------------------------------------------------------

std::optional<Partition> exclusive_cut(const Dfg& g) {
    std::vector<int> acts(g.alphabet.begin(), g.alphabet.end());
    std::map<int, int> pos;
    for (std::size_t i = 0; i < acts.size(); ++i) pos[acts[i]] = static_cast<int>(i);
    UnionFind uf(acts.size());
    for (const auto& [e, f] : g.edges) uf.unite(pos[e.first], pos[e.second]);
    std::map<int, std::vector<int>> groups;
    for (std::size_t i = 0; i < acts.size(); ++i) groups[uf.find(static_cast<int>(i))].push_back(acts[i]);
    if (groups.size() < 2) return std::nullopt;
    Partition parts;
    for (auto& [root, members] : groups) parts.push_back(std::move(members));
    return parts;
}

std::optional<Partition> sequence_cut(const Dfg& g) {
    std::vector<int> acts(g.alphabet.begin(), g.alphabet.end());
    const std::size_t n = acts.size();
    if (n < 2) return std::nullopt;
    std::map<int, int> pos;
    for (std::size_t i = 0; i < n; ++i) pos[acts[i]] = static_cast<int>(i);

    // transitive closure of the directed DFG (dense indices)
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (const auto& [e, f] : g.edges) reach[pos[e.first]][pos[e.second]] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (reach[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (reach[k][j]) reach[i][j] = true;

    // Groups absorb each other until reachability totally orders them:
    // mutually reachable groups (cycles) and incomparable groups both merge.
    std::vector<bool> active(n, true);
    std::vector<std::vector<int>> members(n);
    for (std::size_t i = 0; i < n; ++i) members[i] = {acts[i]};
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n && !changed; ++i) {
            if (!active[i]) continue;
            for (std::size_t j = i + 1; j < n && !changed; ++j) {
                if (!active[j]) continue;
                if (reach[i][j] != reach[j][i]) continue;
                for (std::size_t k = 0; k < n; ++k) {
                    reach[i][k] = reach[i][k] || reach[j][k];
                    reach[k][i] = reach[k][i] || reach[k][j];
                }
                members[i].insert(members[i].end(), members[j].begin(), members[j].end());
                active[j] = false;
                changed = true;
            }
        }
    }
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < n; ++i)
        if (active[i]) reps.push_back(i);
    if (reps.size() < 2) return std::nullopt;
    std::sort(reps.begin(), reps.end(),
              [&](std::size_t a, std::size_t b) { return reach[a][b]; });
    Partition parts;
    for (const auto rep : reps) {
        std::sort(members[rep].begin(), members[rep].end());
        parts.push_back(std::move(members[rep]));
    }
    return parts;
}

std::optional<Partition> parallel_cut(const Dfg& g) {
    std::vector<int> acts(g.alphabet.begin(), g.alphabet.end());
    const std::size_t n = acts.size();
    if (n < 2) return std::nullopt;
    UnionFind uf(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!(g.has_edge(acts[i], acts[j]) && g.has_edge(acts[j], acts[i])))
                uf.unite(static_cast<int>(i), static_cast<int>(j));
    std::map<int, std::vector<int>> comps;
    for (std::size_t i = 0; i < n; ++i) comps[uf.find(static_cast<int>(i))].push_back(acts[i]);
    if (comps.size() < 2) return std::nullopt;

    auto has_start_and_end = [&](const std::vector<int>& part) {
        bool s = false, e = false;
        for (const int a : part) {
            s = s || g.starts.count(a) > 0;
            e = e || g.ends.count(a) > 0;
        }
        return s && e;
    };
    Partition valid;
    std::vector<std::vector<int>> invalid;
    for (auto& [root, members] : comps) {
        if (has_start_and_end(members))
            valid.push_back(std::move(members));
        else
            invalid.push_back(std::move(members));
    }
    if (valid.size() < 2) return std::nullopt;
    for (const auto& inv : invalid) {
        valid.front().insert(valid.front().end(), inv.begin(), inv.end());
    }
    for (auto& part : valid) std::sort(part.begin(), part.end());
    std::sort(valid.begin(), valid.end());
    return valid;
}

std::optional<Partition> loop_cut(const Dfg& g) {
    std::set<int> seed;
    for (const auto& [a, f] : g.starts) seed.insert(a);
    for (const auto& [a, f] : g.ends) seed.insert(a);
    std::vector<int> rest;
    for (const int a : g.alphabet)
        if (!seed.count(a)) rest.push_back(a);
    if (rest.empty()) return std::nullopt;

    std::map<int, int> pos;
    for (std::size_t i = 0; i < rest.size(); ++i) pos[rest[i]] = static_cast<int>(i);
    UnionFind uf(rest.size());
    for (const auto& [e, f] : g.edges)
        if (pos.count(e.first) && pos.count(e.second)) uf.unite(pos[e.first], pos[e.second]);
    std::map<int, std::vector<int>> comps;
    for (std::size_t i = 0; i < rest.size(); ++i)
        comps[uf.find(static_cast<int>(i))].push_back(rest[i]);

    std::vector<int> body(seed.begin(), seed.end());
    Partition redos;
    for (auto& [root, members] : comps) {
        std::set<int> in_comp(members.begin(), members.end());
        bool valid = true;
        for (const auto& [e, f] : g.edges) {
            const bool from_comp = in_comp.count(e.first) > 0;
            const bool to_comp = in_comp.count(e.second) > 0;
            if (from_comp && seed.count(e.second) && !g.starts.count(e.second)) valid = false;
            if (to_comp && seed.count(e.first) && !g.ends.count(e.first)) valid = false;
            if (!valid) break;
        }
        if (valid)
            redos.push_back(std::move(members));
        else
            body.insert(body.end(), members.begin(), members.end());
    }
    if (redos.empty()) return std::nullopt;
    std::sort(body.begin(), body.end());
    for (auto& r : redos) std::sort(r.begin(), r.end());
    std::sort(redos.begin(), redos.end());
    Partition parts;
    parts.push_back(std::move(body));
    for (auto& r : redos) parts.push_back(std::move(r));
    return parts;
}

// ---------------------------------------------------------------------------
// log splitting
// ---------------------------------------------------------------------------

std::vector<int> part_lookup(const Partition& parts, int n_activities) {
    std::vector<int> part(static_cast<std::size_t>(n_activities), -1);
    for (std::size_t p = 0; p < parts.size(); ++p)
        for (const int a : parts[p]) part[static_cast<std::size_t>(a)] = static_cast<int>(p);
    return part;
}

std::vector<std::vector<std::vector<int>>> split_exclusive(
    const std::vector<std::vector<int>>& traces, const Partition& parts,
    const std::vector<int>& part) {
    std::vector<std::vector<std::vector<int>>> child(parts.size());
    for (const auto& t : traces) {
        std::vector<std::size_t> count(parts.size(), 0);
        for (const int a : t)
            if (part[static_cast<std::size_t>(a)] >= 0)
                ++count[static_cast<std::size_t>(part[static_cast<std::size_t>(a)])];
        std::size_t best = 0;
        for (std::size_t p = 1; p < count.size(); ++p)
            if (count[p] > count[best]) best = p;
        std::vector<int> kept;
        for (const int a : t)
            if (part[static_cast<std::size_t>(a)] == static_cast<int>(best)) kept.push_back(a);
        child[best].push_back(std::move(kept));
    }
    return child;
}

std::vector<std::vector<std::vector<int>>> split_sequence(
    const std::vector<std::vector<int>>& traces, const Partition& parts,
    const std::vector<int>& part) {
    std::vector<std::vector<std::vector<int>>> child(parts.size());
    for (const auto& t : traces) {
        std::vector<std::vector<int>> segments(parts.size());
        int current = 0;
        for (const int a : t) {
            const int p = part[static_cast<std::size_t>(a)];
            if (p < current) continue; // out-of-order event dropped as noise
            current = p;
            segments[static_cast<std::size_t>(p)].push_back(a);
        }
        for (std::size_t p = 0; p < parts.size(); ++p)
            child[p].push_back(std::move(segments[p]));
    }
    return child;
}

std::vector<std::vector<std::vector<int>>> split_parallel(
    const std::vector<std::vector<int>>& traces, const Partition& parts,
    const std::vector<int>& part) {
    std::vector<std::vector<std::vector<int>>> child(parts.size());
    for (const auto& t : traces) {
        std::vector<std::vector<int>> projection(parts.size());
        for (const int a : t) {
            const int p = part[static_cast<std::size_t>(a)];
            if (p >= 0) projection[static_cast<std::size_t>(p)].push_back(a);
        }
        for (std::size_t p = 0; p < parts.size(); ++p)
            child[p].push_back(std::move(projection[p]));
    }
    return child;
}

// parts[0] is the loop body; runs of body activities go to child 0, runs of
// redo activities to their part's child. Missing body runs between redo runs
// and at the trace boundaries become empty body traces.
std::vector<std::vector<std::vector<int>>> split_loop(
    const std::vector<std::vector<int>>& traces, const Partition& parts,
    const std::vector<int>& part) {
    std::vector<std::vector<std::vector<int>>> child(parts.size());
    for (const auto& t : traces) {
        std::vector<std::pair<int, std::vector<int>>> runs; // (part, events)
        for (const int a : t) {
            const int p = part[static_cast<std::size_t>(a)];
            if (p < 0) continue;
            if (runs.empty() || runs.back().first != p) runs.push_back({p, {}});
            runs.back().second.push_back(a);
        }
        if (runs.empty()) {
            child[0].push_back({});
            continue;
        }
        int previous = -1; // part of the previous run, -1 at the trace start
        for (auto& [p, events] : runs) {
            if (p == 0) {
                if (previous == 0) child[0].push_back({}); // two body runs back to back
            } else {
                if (previous != 0) child[0].push_back({}); // redo without a body run before it
            }
            child[static_cast<std::size_t>(p)].push_back(std::move(events));
            previous = p;
        }
        if (previous != 0) child[0].push_back({}); // trace ended inside a redo
    }
    return child;
}

// ---------------------------------------------------------------------------
// inductive miner recursion
// ---------------------------------------------------------------------------

ProcessTree im_recurse(const std::vector<std::vector<int>>& traces,
                       const std::vector<std::string>& names, double threshold) {
    bool any_empty = false;
    bool all_empty = true;
    for (const auto& t : traces) {
        if (t.empty())
            any_empty = true;
        else
            all_empty = false;
    }
    if (traces.empty() || all_empty) return ProcessTree::silent();
    if (any_empty) {
        std::vector<std::vector<int>> non_empty;
        for (const auto& t : traces)
            if (!t.empty()) non_empty.push_back(t);
        std::vector<ProcessTree> children;
        children.push_back(ProcessTree::silent());
        children.push_back(im_recurse(non_empty, names, threshold));
        return ProcessTree::node(ProcessTree::Op::Exclusive, std::move(children));
    }

    Dfg g = build_int_dfg(traces);
    filter_dfg(g, threshold);

    if (g.alphabet.size() == 1) {
        const int a = *g.alphabet.begin();
        bool repeats = false;
        for (const auto& t : traces) repeats = repeats || t.size() > 1;
        auto leaf = ProcessTree::leaf(names[static_cast<std::size_t>(a)]);
        if (!repeats) return leaf;
        std::vector<ProcessTree> children;
        children.push_back(std::move(leaf));
        children.push_back(ProcessTree::silent());
        return ProcessTree::node(ProcessTree::Op::Loop, std::move(children));
    }

    const auto recurse_parts =
        [&](ProcessTree::Op op, const std::vector<std::vector<std::vector<int>>>& child_logs) {
            std::vector<ProcessTree> children;
            children.reserve(child_logs.size());
            for (const auto& sublog : child_logs)
                children.push_back(im_recurse(sublog, names, threshold));
            return ProcessTree::node(op, std::move(children));
        };
    const int n_names = static_cast<int>(names.size());

    if (const auto parts = exclusive_cut(g)) {
        const auto part = part_lookup(*parts, n_names);
        return recurse_parts(ProcessTree::Op::Exclusive, split_exclusive(traces, *parts, part));
    }
    if (const auto parts = sequence_cut(g)) {
        const auto part = part_lookup(*parts, n_names);
        return recurse_parts(ProcessTree::Op::Sequence, split_sequence(traces, *parts, part));
    }
    if (const auto parts = parallel_cut(g)) {
        const auto part = part_lookup(*parts, n_names);
        return recurse_parts(ProcessTree::Op::Parallel, split_parallel(traces, *parts, part));
    }
    if (const auto parts = loop_cut(g)) {
        const auto part = part_lookup(*parts, n_names);
        return recurse_parts(ProcessTree::Op::Loop, split_loop(traces, *parts, part));
    }

    // flower model: any sequence over the alphabet
    std::vector<ProcessTree> alternatives;
    for (const int a : g.alphabet)
        alternatives.push_back(ProcessTree::leaf(names[static_cast<std::size_t>(a)]));
    std::vector<ProcessTree> children;
    children.push_back(ProcessTree::silent());
    children.push_back(ProcessTree::node(ProcessTree::Op::Exclusive, std::move(alternatives)));
    return ProcessTree::node(ProcessTree::Op::Loop, std::move(children));
}

} // namespace

DirectlyFollowsGraph build_dfg(const EventLog& log) {
    const auto ilog = intern_log(log);
    const auto g = build_int_dfg(ilog.traces);
    DirectlyFollowsGraph out;
    out.activities = ilog.names;
    for (const auto& [e, f] : g.edges) out.edge_freq[{e.first, e.second}] = f;
    for (const auto& [a, f] : g.starts) out.start_freq[a] = f;
    for (const auto& [a, f] : g.ends) out.end_freq[a] = f;
    return out;
}

ProcessTree inductive_miner(const EventLog& log, double noise_threshold) {
    const auto ilog = intern_log(log);
    return im_recurse(ilog.traces, ilog.names, noise_threshold);
}

// ---------------------------------------------------------------------------
// process tree -> Petri net
// ---------------------------------------------------------------------------

namespace {

struct NetBuilder {
    std::vector<std::string> places;
    std::vector<TransitionDef> transitions;
    std::vector<std::pair<std::string, std::string>> arcs;
    int place_counter = 0;
    int trans_counter = 0;

    std::string add_place() {
        std::string id = "p" + std::to_string(place_counter++);
        places.push_back(id);
        return id;
    }
    std::string add_transition(const std::string& label) {
        std::string id = (label.empty() ? "tau" : "t") + std::to_string(trans_counter++);
        transitions.push_back({id, label});
        return id;
    }
    void arc(const std::string& from, const std::string& to) { arcs.emplace_back(from, to); }
};

void build_block(NetBuilder& b, const ProcessTree& tree, const std::string& entry,
                 const std::string& exit) {
    using Op = ProcessTree::Op;
    switch (tree.op) {
    case Op::Activity: {
        const auto t = b.add_transition(tree.activity);
        b.arc(entry, t);
        b.arc(t, exit);
        return;
    }
    case Op::Silent: {
        const auto t = b.add_transition("");
        b.arc(entry, t);
        b.arc(t, exit);
        return;
    }
    case Op::Sequence: {
        std::string from = entry;
        for (std::size_t i = 0; i < tree.children.size(); ++i) {
            const std::string to = i + 1 == tree.children.size() ? exit : b.add_place();
            build_block(b, tree.children[i], from, to);
            from = to;
        }
        return;
    }
    case Op::Exclusive: {
        for (const auto& child : tree.children) build_block(b, child, entry, exit);
        return;
    }
    case Op::Parallel: {
        const auto split = b.add_transition("");
        const auto join = b.add_transition("");
        b.arc(entry, split);
        b.arc(join, exit);
        for (const auto& child : tree.children) {
            const auto in = b.add_place();
            const auto out = b.add_place();
            b.arc(split, in);
            build_block(b, child, in, out);
            b.arc(out, join);
        }
        return;
    }
    case Op::Loop: {
        const auto body_in = b.add_place();
        const auto body_out = b.add_place();
        const auto enter = b.add_transition("");
        const auto leave = b.add_transition("");
        b.arc(entry, enter);
        b.arc(enter, body_in);
        b.arc(body_out, leave);
        b.arc(leave, exit);
        build_block(b, tree.children.front(), body_in, body_out);
        for (std::size_t i = 1; i < tree.children.size(); ++i)
            build_block(b, tree.children[i], body_out, body_in);
        return;
    }
    }
}

} // namespace

PetriNet tree_to_petri(const ProcessTree& tree) {
    NetBuilder b;
    b.places.push_back("source");
    b.places.push_back("sink");
    build_block(b, tree, "source", "sink");
    return PetriNet(std::move(b.places), std::move(b.transitions), std::move(b.arcs),
                    {{"source", 1}}, {{"sink", 1}});
}

// ---------------------------------------------------------------------------
// heuristics miner
// ---------------------------------------------------------------------------

namespace {

constexpr int kStart = -1;
constexpr int kEnd = -2;

struct HeuristicCounts {
    std::map<std::pair<int, int>, std::size_t> follows; // |a>b|
    std::map<std::pair<int, int>, std::size_t> two_loop; // |a>b>a|
    std::map<int, std::size_t> starts, ends;

    std::size_t f(int a, int b) const {
        const auto it = follows.find({a, b});
        return it == follows.end() ? 0 : it->second;
    }
    std::size_t l2(int a, int b) const {
        const auto it = two_loop.find({a, b});
        return it == two_loop.end() ? 0 : it->second;
    }
};

double dependency(const HeuristicCounts& c, int a, int b) {
    if (a == b) {
        const auto faa = static_cast<double>(c.f(a, a));
        return faa / (faa + 1.0);
    }
    const auto fab = static_cast<double>(c.f(a, b));
    const auto fba = static_cast<double>(c.f(b, a));
    return (fab - fba) / (fab + fba + 1.0);
}

double two_loop_dependency(const HeuristicCounts& c, int a, int b) {
    const auto lab = static_cast<double>(c.l2(a, b));
    const auto lba = static_cast<double>(c.l2(b, a));
    return (lab + lba) / (lab + lba + 1.0);
}

} // namespace

PetriNet heuristics_miner(const EventLog& log, double dependency_threshold,
                          double and_threshold) {
    const auto ilog = intern_log(log);
    const int n = static_cast<int>(ilog.names.size());

    HeuristicCounts c;
    for (const auto& t : ilog.traces) {
        if (t.empty()) continue;
        ++c.starts[t.front()];
        ++c.ends[t.back()];
        for (std::size_t i = 1; i < t.size(); ++i) ++c.follows[{t[i - 1], t[i]}];
        for (std::size_t i = 2; i < t.size(); ++i)
            if (t[i] == t[i - 2] && t[i] != t[i - 1]) ++c.two_loop[{t[i - 2], t[i - 1]}];
    }

    // dependency edges between activities
    std::set<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a) {
        if (dependency(c, a, a) >= dependency_threshold) edges.insert({a, a});
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            if (dependency(c, a, b) >= dependency_threshold) edges.insert({a, b});
        }
    }
    // length-2 loops, unless one side already loops on itself
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (edges.count({a, a}) || edges.count({b, b})) continue;
            if (two_loop_dependency(c, a, b) >= dependency_threshold) {
                edges.insert({a, b});
                edges.insert({b, a});
            }
        }
    }
    // artificial start/end
    for (const auto& [a, f] : c.starts) edges.insert({kStart, a});
    for (const auto& [a, f] : c.ends) edges.insert({a, kEnd});

    // directly-follows count as seen from a node, for the AND measure
    auto follows_from = [&](int from, int to) -> double {
        if (from == kStart) return static_cast<double>(c.starts.count(to) ? c.starts.at(to) : 0);
        if (to == kEnd) return static_cast<double>(c.ends.count(from) ? c.ends.at(from) : 0);
        return static_cast<double>(c.f(from, to));
    };

    std::map<int, std::vector<int>> successors, predecessors;
    for (const auto& [a, b] : edges) {
        if (a == b) continue; // self loops routed separately
        successors[a].push_back(b);
        predecessors[b].push_back(a);
    }

    // group targets into AND clusters; distinct clusters are exclusive
    auto bind = [&](int node, const std::vector<int>& targets, bool outgoing) {
        std::vector<std::vector<int>> groups;
        if (targets.empty()) return groups;
        UnionFind uf(targets.size());
        for (std::size_t i = 0; i < targets.size(); ++i) {
            for (std::size_t j = i + 1; j < targets.size(); ++j) {
                const int x = targets[i];
                const int y = targets[j];
                if (x == kEnd || y == kEnd || x == kStart || y == kStart) continue;
                const double between = static_cast<double>(c.f(x, y)) + static_cast<double>(c.f(y, x));
                const double anchor = outgoing
                                          ? follows_from(node, x) + follows_from(node, y)
                                          : follows_from(x, node) + follows_from(y, node);
                if (between / (anchor + 1.0) >= and_threshold)
                    uf.unite(static_cast<int>(i), static_cast<int>(j));
            }
        }
        std::map<int, std::vector<int>> by_root;
        for (std::size_t i = 0; i < targets.size(); ++i)
            by_root[uf.find(static_cast<int>(i))].push_back(targets[i]);
        for (auto& [root, members] : by_root) groups.push_back(std::move(members));
        return groups;
    };

    // net assembly: each node x owns I_x -> T_x -> O_x, each dependency edge
    // owns a place, and binding groups are wired through silent transitions
    NetBuilder b;
    auto node_name = [&](int x) {
        if (x == kStart) return std::string("START");
        if (x == kEnd) return std::string("END");
        return ilog.names[static_cast<std::size_t>(x)];
    };
    std::map<int, std::string> in_place, out_place;
    std::vector<int> nodes;
    nodes.push_back(kStart);
    for (int a = 0; a < n; ++a) nodes.push_back(a);
    nodes.push_back(kEnd);
    for (const int x : nodes) {
        const auto in = b.add_place();
        const auto out = b.add_place();
        const auto t = b.add_transition(x == kStart || x == kEnd ? "" : node_name(x));
        b.arc(in, t);
        b.arc(t, out);
        in_place[x] = in;
        out_place[x] = out;
    }
    std::map<std::pair<int, int>, std::string> edge_place;
    for (const auto& [a, bb] : edges) {
        if (a == bb) continue;
        edge_place[{a, bb}] = b.add_place();
    }
    for (const int x : nodes) {
        const auto out_groups = bind(x, successors.count(x) ? successors[x] : std::vector<int>{}, true);
        for (const auto& group : out_groups) {
            const auto t = b.add_transition("");
            b.arc(out_place[x], t);
            for (const int y : group) b.arc(t, edge_place[{x, y}]);
        }
        const auto in_groups = bind(x, predecessors.count(x) ? predecessors[x] : std::vector<int>{}, false);
        for (const auto& group : in_groups) {
            const auto t = b.add_transition("");
            for (const int y : group) b.arc(edge_place[{y, x}], t);
            b.arc(t, in_place[x]);
        }
        if (edges.count({x, x})) { // length-1 loop
            const auto t = b.add_transition("");
            b.arc(out_place[x], t);
            b.arc(t, in_place[x]);
        }
    }

    // series fusion: drop 1-in/1-out silent transitions whose input place has
    // no other consumer and whose output place has no other producer
    std::map<std::string, int> producers, consumers;
    for (const auto& [from, to] : b.arcs) {
        ++producers[to];
        ++consumers[from];
    }
    std::set<std::string> dead_transitions;
    std::map<std::string, std::string> alias; // merged place -> surviving place
    auto resolve = [&](std::string id) {
        while (alias.count(id)) id = alias[id];
        return id;
    };
    for (const auto& t : b.transitions) {
        if (!t.label.empty()) continue;
        std::string in_p, out_p;
        int ins = 0, outs = 0;
        for (const auto& [from, to] : b.arcs) {
            if (to == t.id) { in_p = from; ++ins; }
            if (from == t.id) { out_p = to; ++outs; }
        }
        if (ins != 1 || outs != 1) continue;
        const auto p = resolve(in_p);
        const auto q = resolve(out_p);
        if (p == q) continue;
        if (consumers[in_p] != 1 || producers[out_p] != 1) continue;
        dead_transitions.insert(t.id);
        alias[q] = p;
    }
    std::vector<std::string> places;
    for (const auto& p : b.places)
        if (!alias.count(p)) places.push_back(p);
    std::vector<TransitionDef> transitions;
    for (const auto& t : b.transitions)
        if (!dead_transitions.count(t.id)) transitions.push_back(t);
    std::vector<std::pair<std::string, std::string>> arcs;
    for (const auto& [from, to] : b.arcs) {
        if (dead_transitions.count(from) || dead_transitions.count(to)) continue;
        arcs.emplace_back(resolve(from), resolve(to));
    }

    const auto source = resolve(in_place[kStart]);
    const auto sink = resolve(out_place[kEnd]);
    return PetriNet(std::move(places), std::move(transitions), std::move(arcs),
                    {{source, 1}}, {{sink, 1}});
}

} // namespace pmfd
