#include "pmfd/eventlog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pmfd/errors.hpp"
#include "pmfd/rng.hpp"

namespace pmfd {

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        d += diff * diff;
    }
    return d;
}

int nearest(const std::vector<double>& v, const std::vector<std::vector<double>>& centers) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centers.size(); ++c) {
        const double d = sq_dist(v, centers[c]);
        if (d < best_d) { // strict: ties keep the lowest id
            best_d = d;
            best = static_cast<int>(c);
        }
    }
    return best;
}

} // namespace

namespace {

struct LloydRun {
    std::vector<std::vector<double>> centers;
    double inertia = 0.0;
    std::vector<double> history;
};

LloydRun lloyd_once(const std::vector<std::vector<double>>& values, int k, Rng& rng) {
    const std::size_t n = values.size();
    const std::size_t p = values.front().size();

    // k-means++ seeding
    std::vector<std::vector<double>> centers;
    centers.reserve(static_cast<std::size_t>(k));
    centers.push_back(values[rng.uniform_index(n)]);
    std::vector<double> d2(n);
    while (centers.size() < static_cast<std::size_t>(k)) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : centers) best = std::min(best, sq_dist(values[i], c));
            d2[i] = best;
            total += best;
        }
        std::size_t chosen = 0;
        if (total > 0.0) {
            const double r = rng.uniform() * total;
            double acc = 0.0;
            chosen = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc >= r) { chosen = i; break; }
            }
        } else {
            chosen = rng.uniform_index(n); // all points coincide with a center
        }
        centers.push_back(values[chosen]);
    }

    std::vector<int> assign(n, 0);
    double inertia = 0.0;
    std::vector<double> history;
    for (int iter = 0; iter < 300; ++iter) {
        // assignment
        double new_inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            assign[i] = nearest(values[i], centers);
            new_inertia += sq_dist(values[i], centers[static_cast<std::size_t>(assign[i])]);
        }
        // update
        std::vector<std::vector<double>> sums(static_cast<std::size_t>(k),
                                              std::vector<double>(p, 0.0));
        std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = static_cast<std::size_t>(assign[i]);
            ++counts[c];
            for (std::size_t f = 0; f < p; ++f) sums[c][f] += values[i][f];
        }
        for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c) {
            if (counts[c] == 0) {
                // reseed at the point farthest from its current center
                std::size_t far = 0;
                double far_d = -1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double d =
                        sq_dist(values[i], centers[static_cast<std::size_t>(assign[i])]);
                    if (d > far_d) { far_d = d; far = i; }
                }
                centers[c] = values[far];
                continue;
            }
            for (std::size_t f = 0; f < p; ++f)
                centers[c][f] = sums[c][f] / static_cast<double>(counts[c]);
        }
        history.push_back(new_inertia);
        const bool converged =
            iter > 0 && std::abs(inertia - new_inertia) <= 1e-6 * std::max(inertia, 1e-300);
        inertia = new_inertia;
        if (converged) break;
    }
    // final inertia against the updated centers
    inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        inertia += sq_dist(values[i], centers[static_cast<std::size_t>(nearest(values[i], centers))]);

    LloydRun run;
    run.centers = std::move(centers);
    run.inertia = inertia;
    run.history = std::move(history);
    return run;
}

} // namespace

Centroids kmeans_fit(const std::vector<std::vector<double>>& values, int k, std::uint64_t seed,
                     std::vector<double>* inertia_history) {
    if (k <= 0) throw EmptyInputError("k must be positive");
    if (values.size() < static_cast<std::size_t>(k)) throw TooFewPointsError(values.size(), k);

    // best of 10 seeded restarts, like the usual library default
    constexpr int kRestarts = 10;
    LloydRun best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < kRestarts; ++restart) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(restart)));
        auto run = lloyd_once(values, k, rng);
        if (run.inertia < best.inertia) best = std::move(run);
    }
    if (inertia_history) *inertia_history = best.history;

    Centroids out;
    out.k = k;
    out.seed = seed;
    out.inertia = best.inertia;
    out.points = std::move(best.centers);
    return out;
}

std::vector<int> assign_states(const std::vector<std::vector<double>>& samples,
                               const Centroids& c) {
    std::vector<int> out;
    out.reserve(samples.size());
    for (const auto& s : samples) {
        if (s.size() != c.dim()) throw DimensionMismatchError(s.size(), c.dim());
        out.push_back(nearest(s, c.points));
    }
    return out;
}

std::vector<int> assign_states(const TimeSeriesWindow& window, const Centroids& c) {
    return assign_states(window.samples, c);
}

Case extract_case(const TimeSeriesWindow& window, const Centroids& c, double rate_hz,
                  const std::string& case_id) {
    if (window.size() < 2) throw WindowTooShortError(window.size());
    const auto states = assign_states(window, c);
    Case out;
    out.id = case_id;
    std::size_t run_start = 0;
    for (std::size_t t = 1; t < states.size(); ++t) {
        if (states[t] == states[t - 1]) continue;
        Event e;
        e.src = states[t - 1];
        e.dst = states[t];
        e.timestep = t;
        e.state_time_s = static_cast<double>(t - run_start) / rate_hz;
        out.trace.push_back(e);
        run_start = t;
    }
    if (out.trace.empty()) throw NoTransitionsError();
    return out;
}

EventLog build_log(const std::vector<TimeSeriesWindow>& windows, const Centroids& c,
                   double rate_hz, LogBuildReport* report) {
    if (windows.empty()) throw EmptyInputError("no windows");
    EventLog log;
    log.k = c.k;
    log.fault_label = windows.front().label;
    LogBuildReport rep;
    rep.windows_in = windows.size();
    for (std::size_t i = 0; i < windows.size(); ++i) {
        try {
            log.cases.push_back(extract_case(windows[i], c, rate_hz,
                                             "case_" + std::to_string(i)));
        } catch (const NoTransitionsError&) {
            ++rep.skipped_degenerate;
        } catch (const WindowTooShortError&) {
            ++rep.skipped_degenerate;
        }
    }
    if (report) *report = rep;
    if (log.cases.empty()) throw AllWindowsDegenerateError();
    return log;
}

std::string activity_label(int src, int dst) {
    return "s" + std::to_string(src) + "->s" + std::to_string(dst);
}

std::optional<std::pair<int, int>> parse_activity_label(std::string_view label) {
    if (label.size() < 6 || label.front() != 's') return std::nullopt;
    const auto arrow = label.find("->s", 1);
    if (arrow == std::string_view::npos) return std::nullopt;
    int src = 0, dst = 0;
    const char* sb = label.data() + 1;
    const char* se = label.data() + arrow;
    const char* db = label.data() + arrow + 3;
    const char* de = label.data() + label.size();
    auto r1 = std::from_chars(sb, se, src);
    auto r2 = std::from_chars(db, de, dst);
    if (r1.ec != std::errc() || r1.ptr != se || r2.ec != std::errc() || r2.ptr != de)
        return std::nullopt;
    return std::make_pair(src, dst);
}

std::string log_to_json(const EventLog& log) {
    nlohmann::json j;
    j["k"] = log.k;
    j["fault_label"] = log.fault_label;
    j["cases"] = nlohmann::json::array();
    for (const auto& c : log.cases) {
        nlohmann::json jc;
        jc["case_id"] = c.id;
        jc["events"] = nlohmann::json::array();
        for (const auto& e : c.trace)
            jc["events"].push_back({{"src", e.src},
                                    {"dst", e.dst},
                                    {"timestep", e.timestep},
                                    {"state_time_s", e.state_time_s}});
        j["cases"].push_back(std::move(jc));
    }
    return j.dump(2);
}

std::string log_to_csv(const EventLog& log) {
    std::ostringstream out;
    out << "case_id,activity,src,dst,timestep,state_time_s\n";
    out.precision(17);
    for (const auto& c : log.cases)
        for (const auto& e : c.trace)
            out << c.id << ',' << activity_label(e.src, e.dst) << ',' << e.src << ',' << e.dst
                << ',' << e.timestep << ',' << e.state_time_s << '\n';
    return out.str();
}

} // namespace pmfd
