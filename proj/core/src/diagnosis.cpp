#include "pmfd/diagnosis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pmfd/discovery.hpp"
#include "pmfd/errors.hpp"
#include "pmfd/rng.hpp"

namespace pmfd {

std::vector<FaultDictionaryEntry> build_dictionary(
    const std::map<std::string, std::vector<TimeSeriesWindow>>& training,
    const DictionaryConfig& cfg) {
    if (training.empty()) throw EmptyInputError("no training faults");
    if (cfg.miner != "imf" && cfg.miner != "hm")
        throw ConfigError("unknown miner '" + cfg.miner + "' (ilp discovery is not provided; use imf or hm)");

    std::vector<FaultDictionaryEntry> entries;
    std::size_t fault_index = 0;
    for (const auto& [label, windows] : training) {
        try {
            if (windows.size() < 2)
                throw EmptyInputError("need at least 2 training windows");
            FaultDictionaryEntry entry;
            entry.fault_label = label;
            entry.provenance = {cfg.k, cfg.miner, cfg.noise_threshold, cfg.seed};

            // phase 2: per-fault clustering over all training samples
            std::vector<std::vector<double>> values;
            for (const auto& w : windows)
                values.insert(values.end(), w.samples.begin(), w.samples.end());
            entry.centroids = kmeans_fit(values, cfg.k, derive_seed(cfg.seed, fault_index));
            const auto log = build_log(windows, entry.centroids, cfg.rate_hz);

            // phase 3: discovery + time enhancement
            PetriNet net = cfg.miner == "imf"
                               ? tree_to_petri(inductive_miner(log, cfg.noise_threshold))
                               : heuristics_miner(log, cfg.noise_threshold, cfg.and_threshold);
            entry.soundness = check_soundness(net, cfg.soundness_budget);

            std::map<int, DurationHistogram> hists;
            for (const auto& [state, times] : collect_state_times(log))
                hists.emplace(state, build_histogram(times, cfg.bins));
            entry.spn = enhance(std::move(net), hists);

            // phase 4: simulation pool (skipped for non-sound nets)
            if (!entry.soundness.unsound()) {
                entry.min_visible_completion = shortest_visible_completion(entry.spn.net);
                entry.sim_pool =
                    simulate_pool(entry.spn, cfg.n_sims, derive_seed(cfg.seed, 1000 + fault_index),
                                  entry.centroids, cfg.rate_hz, nullptr, cfg.max_events);
            }
            entries.push_back(std::move(entry));
        } catch (const Error& e) {
            throw FaultBuildError(label, e.what());
        }
        ++fault_index;
    }
    return entries;
}

namespace {

/// Discretized trace of the window under one entry's centroids; empty when
/// the window holds a single state there (scored as an empty trace).
std::vector<std::string> window_trace(const TimeSeriesWindow& window,
                                      const FaultDictionaryEntry& entry, bool& degenerate) {
    degenerate = false;
    try {
        // only the transition labels matter here, so any rate works
        const auto c = extract_case(window, entry.centroids, 1.0, "online");
        std::vector<std::string> trace;
        trace.reserve(c.trace.size());
        for (const auto& e : c.trace) trace.push_back(activity_label(e.src, e.dst));
        return trace;
    } catch (const NoTransitionsError&) {
        degenerate = true;
        return {};
    }
}

} // namespace

double f1_score(std::size_t tp, std::size_t fp, std::size_t fn) {
    const double denom = static_cast<double>(2 * tp + fp + fn);
    return denom > 0.0 ? static_cast<double>(2 * tp) / denom : 0.0;
}

DiagnosisResult identify(const TimeSeriesWindow& window,
                         const std::vector<FaultDictionaryEntry>& dict,
                         const AlignOptions& options) {
    if (dict.empty()) throw EmptyInputError("empty fault dictionary");
    for (const auto& entry : dict)
        if (!entry.usable())
            throw UnsoundModelError("dictionary entry '" + entry.fault_label + "' is not usable");

    DiagnosisResult result;
    bool any_transitions = false;
    for (const auto& entry : dict) {
        FaultScores s;
        s.fault_label = entry.fault_label;

        bool degenerate = false;
        const auto trace = window_trace(window, entry, degenerate);
        any_transitions = any_transitions || !degenerate;

        const auto t0 = std::chrono::steady_clock::now();
        const std::size_t worst = trace.size() + entry.min_visible_completion;
        if (worst == 0) {
            s.fitness = 1.0;
        } else {
            const auto best = align(trace, entry.spn.net, options).cost;
            s.fitness = 1.0 - static_cast<double>(best) / static_cast<double>(worst);
        }
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        s.cc_time_s = dt.count();

        s.best_rmse = std::numeric_limits<double>::infinity();
        s.best_r2 = -std::numeric_limits<double>::infinity();
        for (const auto& sim : entry.sim_pool) {
            s.best_rmse = std::min(s.best_rmse, rmse(window.samples, sim.samples));
            try {
                s.best_r2 = std::max(s.best_r2, r2(window.samples, sim.samples));
            } catch (const ZeroVarianceObservedError&) {
                s.best_r2 = std::max(s.best_r2, 0.0);
            }
        }
        result.scores.push_back(std::move(s));
    }
    if (!any_transitions) throw NoTransitionsInWindowError();

    auto argbest = [&](auto better) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < result.scores.size(); ++i)
            if (better(result.scores[i], result.scores[best])) best = i;
        return best;
    };
    result.vote_indices[0] =
        argbest([](const FaultScores& a, const FaultScores& b) { return a.fitness > b.fitness; });
    result.vote_indices[1] = argbest(
        [](const FaultScores& a, const FaultScores& b) { return a.best_rmse < b.best_rmse; });
    result.vote_indices[2] =
        argbest([](const FaultScores& a, const FaultScores& b) { return a.best_r2 > b.best_r2; });

    std::size_t winner = result.vote_indices[0]; // three-way tie: fitness decides
    if (result.vote_indices[1] == result.vote_indices[2]) winner = result.vote_indices[1];
    if (result.vote_indices[0] == result.vote_indices[1] ||
        result.vote_indices[0] == result.vote_indices[2])
        winner = result.vote_indices[0];
    result.fault_label = dict[winner].fault_label;
    return result;
}

EvaluationReport evaluate(const std::vector<FaultDictionaryEntry>& dict,
                          const std::map<std::string, std::vector<TimeSeriesWindow>>& test,
                          const AlignOptions& options) {
    EvaluationReport report;
    std::vector<double> cc_times;
    std::map<std::string, std::pair<double, std::size_t>> fault_cc; // sum, count
    for (const auto& [true_label, windows] : test) {
        for (const auto& w : windows) {
            const auto result = identify(w, dict, options);
            ++report.confusion[true_label][result.fault_label];
            for (const auto& s : result.scores) {
                cc_times.push_back(s.cc_time_s);
                auto& [sum, count] = fault_cc[s.fault_label];
                sum += s.cc_time_s;
                ++count;
            }
        }
    }
    double f1_sum = 0.0;
    for (const auto& entry : dict) {
        EvaluationReport::PerFault pf;
        pf.label = entry.fault_label;
        for (const auto& [true_label, row] : report.confusion) {
            for (const auto& [predicted, count] : row) {
                if (true_label == pf.label && predicted == pf.label) pf.tp += count;
                if (true_label != pf.label && predicted == pf.label) pf.fp += count;
                if (true_label == pf.label && predicted != pf.label) pf.fn += count;
            }
        }
        pf.f1 = f1_score(pf.tp, pf.fp, pf.fn);
        f1_sum += pf.f1;
        if (const auto it = fault_cc.find(pf.label); it != fault_cc.end() && it->second.second > 0)
            pf.mean_cc_time_s = it->second.first / static_cast<double>(it->second.second);
        report.per_fault.push_back(std::move(pf));
    }
    report.macro_f1 = report.per_fault.empty() ? 0.0 : f1_sum / static_cast<double>(report.per_fault.size());

    if (!cc_times.empty()) {
        double sum = 0.0;
        for (const double t : cc_times) sum += t;
        report.mean_cc_time_s = sum / static_cast<double>(cc_times.size());
        std::sort(cc_times.begin(), cc_times.end());
        const std::size_t mid = cc_times.size() / 2;
        report.median_cc_time_s = cc_times.size() % 2 == 1
                                      ? cc_times[mid]
                                      : 0.5 * (cc_times[mid - 1] + cc_times[mid]);
    }
    return report;
}

std::string EvaluationReport::to_csv() const {
    std::ostringstream out;
    out.precision(10);
    out << "fault,tp,fp,fn,f1,mean_cc_time_s\n";
    for (const auto& pf : per_fault)
        out << pf.label << ',' << pf.tp << ',' << pf.fp << ',' << pf.fn << ',' << pf.f1 << ','
            << pf.mean_cc_time_s << '\n';
    return out.str();
}

std::vector<AblationRow> ablate_accuracy(
    const std::map<std::string, LabeledWindowPool>& pools,
    const std::map<std::string, std::vector<TimeSeriesWindow>>& test,
    const std::vector<double>& acc_levels, const DictionaryConfig& cfg, std::uint64_t seed,
    std::size_t n_reps) {
    for (const double acc : acc_levels)
        if (acc <= 0.0 || acc > 1.0) throw ConfigError("acc level outside (0,1]");

    std::vector<AblationRow> rows;
    for (const double acc : acc_levels) {
        AblationRow row;
        row.acc = acc;
        for (std::size_t rep = 0; rep < n_reps; ++rep) {
            const auto rep_seed = derive_seed(seed, rep);
            std::map<std::string, std::vector<TimeSeriesWindow>> training;
            for (const auto& [label, pool] : pools)
                training[label] =
                    compose_training_set(pool, acc, pool.positives.size(), rep_seed);
            DictionaryConfig rep_cfg = cfg;
            rep_cfg.seed = rep_seed;
            const auto dict = build_dictionary(training, rep_cfg);
            row.rep_f1.push_back(evaluate(dict, test, cfg.align).macro_f1);
        }
        double mean = 0.0;
        for (const double v : row.rep_f1) mean += v;
        mean /= static_cast<double>(row.rep_f1.size());
        double var = 0.0;
        for (const double v : row.rep_f1) var += (v - mean) * (v - mean);
        row.mean_f1 = mean;
        row.std_f1 = std::sqrt(var / static_cast<double>(row.rep_f1.size()));
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// persistence
// ---------------------------------------------------------------------------

namespace {

std::string window_csv(const SimulatedWindow& w, const std::vector<std::string>& feature_names,
                       std::size_t window_id) {
    std::ostringstream out;
    out.precision(17);
    out << "window_id,t";
    for (const auto& f : feature_names) out << ',' << f;
    out << '\n';
    for (std::size_t t = 0; t < w.samples.size(); ++t) {
        out << window_id << ',' << t;
        for (const double v : w.samples[t]) out << ',' << v;
        out << '\n';
    }
    return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw EmptyFileError("cannot write " + path.string());
    out << content;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw EmptyFileError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

void save_dictionary(const std::filesystem::path& dir,
                     const std::vector<FaultDictionaryEntry>& entries,
                     const std::vector<std::string>& feature_names) {
    std::filesystem::create_directories(dir);
    nlohmann::json manifest;
    manifest["feature_names"] = feature_names;
    manifest["faults"] = nlohmann::json::array();
    for (const auto& entry : entries) {
        nlohmann::json jf;
        jf["label"] = entry.fault_label;
        jf["k"] = entry.provenance.k;
        jf["miner"] = entry.provenance.miner;
        jf["noise_threshold"] = entry.provenance.noise_threshold;
        jf["seed"] = entry.provenance.seed;
        jf["sound"] = entry.soundness.sound();
        jf["soundness_reason"] = entry.soundness.reason;
        jf["n_sims"] = entry.sim_pool.size();
        manifest["faults"].push_back(std::move(jf));

        const auto fault_dir = dir / entry.fault_label;
        std::filesystem::create_directories(fault_dir / "sims");
        write_file(fault_dir / "net.json", net_to_json(entry.spn.net));

        nlohmann::json jc;
        jc["k"] = entry.centroids.k;
        jc["seed"] = entry.centroids.seed;
        jc["inertia"] = entry.centroids.inertia;
        jc["points"] = entry.centroids.points;
        write_file(fault_dir / "centroids.json", jc.dump(2));

        // reconstruct the per-state histograms from the transitions
        std::map<int, DurationHistogram> hists;
        for (const auto& [t, hist] : entry.spn.dist) {
            const auto parsed = parse_activity_label(entry.spn.net.label(t));
            if (parsed) hists.emplace(parsed->first, hist);
        }
        write_file(fault_dir / "hist.csv", histograms_to_csv(hists));

        for (std::size_t i = 0; i < entry.sim_pool.size(); ++i) {
            std::ostringstream name;
            name << "sim_" << i << ".csv";
            write_file(fault_dir / "sims" / name.str(),
                       window_csv(entry.sim_pool[i], feature_names, i));
        }
    }
    write_file(dir / "manifest.json", manifest.dump(2));
}

std::vector<FaultDictionaryEntry> load_dictionary(const std::filesystem::path& dir) {
    const auto manifest = nlohmann::json::parse(read_file(dir / "manifest.json"));
    if (!manifest.contains("faults"))
        throw ConfigError("dictionary manifest missing field 'faults'");
    std::vector<FaultDictionaryEntry> entries;
    for (const auto& jf : manifest.at("faults")) {
        for (const char* field : {"label", "k", "miner", "noise_threshold", "seed", "n_sims"})
            if (!jf.contains(field))
                throw ConfigError(std::string("dictionary manifest missing field '") + field + "'");
        FaultDictionaryEntry entry;
        entry.fault_label = jf.at("label").get<std::string>();
        entry.provenance.k = jf.at("k").get<int>();
        entry.provenance.miner = jf.at("miner").get<std::string>();
        entry.provenance.noise_threshold = jf.at("noise_threshold").get<double>();
        entry.provenance.seed = jf.at("seed").get<std::uint64_t>();

        const auto fault_dir = dir / entry.fault_label;
        auto net = net_from_json(read_file(fault_dir / "net.json"));
        entry.soundness.verdict = jf.at("sound").get<bool>() ? SoundnessResult::Verdict::Sound
                                                             : SoundnessResult::Verdict::Unsound;
        entry.soundness.reason = jf.value("soundness_reason", "");

        const auto jc = nlohmann::json::parse(read_file(fault_dir / "centroids.json"));
        entry.centroids.k = jc.at("k").get<int>();
        entry.centroids.seed = jc.at("seed").get<std::uint64_t>();
        entry.centroids.inertia = jc.at("inertia").get<double>();
        entry.centroids.points = jc.at("points").get<std::vector<std::vector<double>>>();

        const auto hists = histograms_from_csv(read_file(fault_dir / "hist.csv"));
        entry.spn = enhance(std::move(net), hists);
        if (!entry.soundness.unsound())
            entry.min_visible_completion = shortest_visible_completion(entry.spn.net);

        const auto n_sims = jf.at("n_sims").get<std::size_t>();
        for (std::size_t i = 0; i < n_sims; ++i) {
            std::ostringstream name;
            name << "sim_" << i << ".csv";
            const auto csv = read_file(fault_dir / "sims" / name.str());
            SimulatedWindow w;
            std::istringstream in(csv);
            std::string line;
            std::getline(in, line); // header
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                std::istringstream row(line);
                std::string cell;
                std::getline(row, cell, ','); // window_id
                std::getline(row, cell, ','); // t
                std::vector<double> sample;
                while (std::getline(row, cell, ',')) sample.push_back(std::stod(cell));
                w.samples.push_back(std::move(sample));
            }
            entry.sim_pool.push_back(std::move(w));
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

} // namespace pmfd
