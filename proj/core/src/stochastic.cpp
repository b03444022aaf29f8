#include "pmfd/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pmfd/errors.hpp"

namespace pmfd {

double DurationHistogram::sample(Rng& rng) const {
    const double r = rng.uniform();
    double acc = 0.0;
    std::size_t bin = probs.size() - 1;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (r < acc) { bin = i; break; }
    }
    return rng.uniform(bin_edges[bin], bin_edges[bin + 1]);
}

std::map<int, std::vector<double>> collect_state_times(const EventLog& log) {
    if (log.cases.empty()) throw EmptyLogError();
    std::map<int, std::vector<double>> out;
    for (const auto& c : log.cases)
        for (const auto& e : c.trace) out[e.src].push_back(e.state_time_s);
    return out;
}

DurationHistogram build_histogram(const std::vector<double>& times, std::size_t bins) {
    if (times.empty()) throw EmptyTimesError();
    if (bins == 0) throw EmptyInputError("bins must be positive");
    const auto [lo_it, hi_it] = std::minmax_element(times.begin(), times.end());
    double lo = *lo_it;
    double hi = *hi_it;
    DurationHistogram h;
    h.support_count = times.size();
    if (lo == hi) { // degenerate: one bin around the single value
        h.bin_edges = {lo, lo + 1e-9};
        h.probs = {1.0};
        return h;
    }
    h.bin_edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i)
        h.bin_edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
    h.bin_edges[bins] = hi;
    std::vector<std::size_t> counts(bins, 0);
    for (const double t : times) {
        auto bin = static_cast<std::size_t>((t - lo) / (hi - lo) * static_cast<double>(bins));
        if (bin >= bins) bin = bins - 1; // t == hi lands in the last bin
        ++counts[bin];
    }
    h.probs.resize(bins);
    for (std::size_t i = 0; i < bins; ++i)
        h.probs[i] = static_cast<double>(counts[i]) / static_cast<double>(times.size());
    return h;
}

StochasticPetriNet enhance(PetriNet net, const std::map<int, DurationHistogram>& state_histograms,
                           const std::map<std::string, int>& activity_to_source_state) {
    StochasticPetriNet spn{std::move(net), {}};
    for (std::size_t t = 0; t < spn.net.n_transitions(); ++t) {
        if (spn.net.is_silent(t)) continue;
        const auto state_it = activity_to_source_state.find(spn.net.label(t));
        if (state_it == activity_to_source_state.end())
            throw MissingDistributionError(-1);
        const auto hist_it = state_histograms.find(state_it->second);
        if (hist_it == state_histograms.end())
            throw MissingDistributionError(state_it->second);
        spn.dist.emplace(t, hist_it->second);
    }
    return spn;
}

StochasticPetriNet enhance(PetriNet net, const std::map<int, DurationHistogram>& state_histograms) {
    std::map<std::string, int> activity_source;
    for (std::size_t t = 0; t < net.n_transitions(); ++t) {
        if (net.is_silent(t)) continue;
        const auto parsed = parse_activity_label(net.label(t));
        if (!parsed) throw MissingDistributionError(-1);
        activity_source[net.label(t)] = parsed->first;
    }
    return enhance(std::move(net), state_histograms, activity_source);
}

std::vector<std::string> TimedTrace::labels() const {
    std::vector<std::string> out;
    out.reserve(steps.size());
    for (const auto& s : steps) out.push_back(s.label);
    return out;
}

namespace {

std::string marking_to_string(const PetriNet& net, const Marking& m) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (std::size_t p = 0; p < m.size(); ++p) {
        if (m[p] == 0) continue;
        if (!first) out << ", ";
        first = false;
        out << net.place_id(p) << ':' << m[p];
    }
    out << '}';
    return out.str();
}

} // namespace

TimedTrace simulate_trace(const StochasticPetriNet& spn, std::uint64_t seed,
                          std::size_t max_events) {
    const PetriNet& net = spn.net;
    Rng rng(seed);
    Marking m = net.initial_marking();
    TimedTrace trace;
    const std::size_t max_steps = std::max<std::size_t>(50 * max_events, 1000);
    std::size_t steps = 0;
    while (m != net.final_marking()) {
        if (++steps > max_steps) throw TraceOverflowError(max_events);
        const auto enabled = enabled_transitions(net, m);
        if (enabled.empty()) throw DeadlockError(marking_to_string(net, m));

        // Silent transitions fire in zero time. When they compete with
        // visible ones the choice is proportional: drawing any enabled
        // transition uniformly decides silent-vs-race, so optional branches
        // behind a skip are not starved.
        std::vector<std::size_t> silent, visible;
        for (const auto t : enabled)
            (net.is_silent(t) ? silent : visible).push_back(t);
        if (!silent.empty() &&
            (visible.empty() || rng.uniform_index(enabled.size()) < silent.size())) {
            m = fire(net, m, silent[rng.uniform_index(silent.size())]);
            continue;
        }

        // race: every enabled visible transition samples a duration, the
        // minimum wins; ties go to the lowest transition index
        std::size_t winner = visible.front();
        double winner_duration = spn.dist.at(visible.front()).sample(rng);
        for (std::size_t i = 1; i < visible.size(); ++i) {
            const double d = spn.dist.at(visible[i]).sample(rng);
            if (d < winner_duration) {
                winner_duration = d;
                winner = visible[i];
            }
        }
        if (trace.steps.size() >= max_events) throw TraceOverflowError(max_events);
        const auto parsed = parse_activity_label(net.label(winner));
        TimedStep step;
        step.label = net.label(winner);
        step.source_state = parsed ? parsed->first : -1;
        step.duration_s = winner_duration;
        trace.steps.push_back(std::move(step));
        m = fire(net, m, winner);
    }
    if (!trace.steps.empty()) {
        // dwell in the terminal state, sampled from that state's distribution
        // (fallback: the last fired transition's own distribution)
        const auto last = parse_activity_label(trace.steps.back().label);
        if (last) {
            trace.terminal_state = last->second;
            const DurationHistogram* hist = nullptr;
            for (std::size_t t = 0; t < net.n_transitions(); ++t) {
                if (net.is_silent(t)) continue;
                const auto parsed = parse_activity_label(net.label(t));
                if (parsed && parsed->first == trace.terminal_state) {
                    hist = &spn.dist.at(t);
                    break;
                }
            }
            if (!hist) {
                for (const auto& [t, h] : spn.dist) {
                    if (net.label(t) == trace.steps.back().label) {
                        hist = &h;
                        break;
                    }
                }
            }
            if (hist) trace.terminal_duration_s = hist->sample(rng);
        }
    }
    return trace;
}

SimulatedWindow trace_to_window(const TimedTrace& trace, const Centroids& centroids,
                                double rate_hz) {
    SimulatedWindow out;
    auto hold = [&](int state, double duration_s) {
        if (state < 0 || state >= centroids.k)
            throw DimensionMismatchError(static_cast<std::size_t>(state),
                                         static_cast<std::size_t>(centroids.k));
        out.pairs.emplace_back(state, duration_s);
        const auto n_samples =
            static_cast<std::size_t>(std::llround(std::max(duration_s, 0.0) * rate_hz));
        const auto& centroid = centroids.points[static_cast<std::size_t>(state)];
        for (std::size_t i = 0; i < n_samples; ++i) out.samples.push_back(centroid);
    };
    for (const auto& step : trace.steps) hold(step.source_state, step.duration_s);
    if (trace.terminal_state >= 0 && trace.terminal_duration_s > 0.0)
        hold(trace.terminal_state, trace.terminal_duration_s);
    if (out.samples.empty()) throw ZeroLengthWindowError();
    return out;
}

std::vector<SimulatedWindow> simulate_pool(const StochasticPetriNet& spn, std::size_t n,
                                           std::uint64_t seed, const Centroids& centroids,
                                           double rate_hz, PoolReport* report,
                                           std::size_t max_events) {
    if (n == 0) throw EmptyInputError("pool size must be positive");
    std::vector<SimulatedWindow> out;
    PoolReport rep;
    rep.requested = n;
    for (std::size_t attempt = 0; attempt < 4 * n && out.size() < n; ++attempt) {
        try {
            const auto trace = simulate_trace(spn, derive_seed(seed, attempt), max_events);
            out.push_back(trace_to_window(trace, centroids, rate_hz));
            ++rep.succeeded;
        } catch (const ZeroLengthWindowError&) {
            ++rep.empty_traces;
        } catch (const Error&) {
            ++rep.failed;
        }
    }
    if (report) *report = rep;
    if (rep.succeeded * 2 < n)
        throw TooManyFailuresError(rep.failed + rep.empty_traces, rep.requested);
    return out;
}

std::string histograms_to_csv(const std::map<int, DurationHistogram>& state_histograms) {
    std::ostringstream out;
    out.precision(17);
    out << "state,bin_lo,bin_hi,prob\n";
    for (const auto& [state, hist] : state_histograms)
        for (std::size_t i = 0; i < hist.probs.size(); ++i)
            out << state << ',' << hist.bin_edges[i] << ',' << hist.bin_edges[i + 1] << ','
                << hist.probs[i] << '\n';
    return out.str();
}

std::map<int, DurationHistogram> histograms_from_csv(const std::string& csv) {
    std::map<int, DurationHistogram> out;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');
        const int state = std::stoi(cell);
        std::getline(row, cell, ',');
        const double lo = std::stod(cell);
        std::getline(row, cell, ',');
        const double hi = std::stod(cell);
        std::getline(row, cell, ',');
        const double prob = std::stod(cell);
        auto& h = out[state];
        if (h.bin_edges.empty()) h.bin_edges.push_back(lo);
        h.bin_edges.push_back(hi);
        h.probs.push_back(prob);
    }
    return out;
}

} // namespace pmfd
