#include "pmfd/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pmfd/discovery.hpp"
#include "pmfd/errors.hpp"
#include "pmfd/rng.hpp"

namespace pmfd {

namespace {

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << content;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

void RunConfig::validate() const {
    if (source != "synth" && source != "csv") throw ConfigError("source must be synth or csv");
    if (k < 2) throw ConfigError("k must be >= 2");
    if (miner == "ilp")
        throw ConfigError("miner 'ilp' is not provided (integer programming discovery is out of "
                          "scope); use imf or hm");
    if (miner != "imf" && miner != "hm") throw ConfigError("miner must be imf or hm");
    if (noise_threshold < 0.0 || noise_threshold > 1.0)
        throw ConfigError("noise_threshold must be in [0,1]");
    if (train_fraction <= 0.0 || train_fraction >= 1.0)
        throw ConfigError("train_fraction must be in (0,1)");
    if (rate_hz <= 0.0) throw ConfigError("rate_hz must be positive");
    if (bins == 0) throw ConfigError("bins must be positive");
    if (n_sims == 0) throw ConfigError("n_sims must be positive");
    if (n_reps == 0) throw ConfigError("n_reps must be positive");
    for (const double acc : acc_levels)
        if (acc <= 0.0 || acc > 1.0) throw ConfigError("acc_levels must lie in (0,1]");
    for (const auto& m : sweep_miners)
        if (m != "imf" && m != "hm")
            throw ConfigError(m == "ilp" ? "sweep_miners: 'ilp' is out of scope"
                                         : "sweep_miners must contain only imf or hm");
    if (source == "csv" && csv_paths.size() != csv_labels.size())
        throw ConfigError("csv_paths and csv_labels must have the same length");
}

DictionaryConfig RunConfig::dictionary_config() const {
    DictionaryConfig d;
    d.k = k;
    d.miner = miner;
    d.noise_threshold = noise_threshold;
    d.and_threshold = and_threshold;
    d.bins = bins;
    d.n_sims = n_sims;
    d.max_events = max_events;
    d.rate_hz = rate_hz;
    d.seed = seed;
    d.soundness_budget = soundness_budget;
    d.align = align_options();
    return d;
}

AlignOptions RunConfig::align_options() const {
    AlignOptions a;
    a.node_budget = align_node_budget;
    a.time_limit_s = align_time_limit_s;
    return a;
}

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
    try {
        if (key == "source") cfg.source = value;
        else if (key == "synth.seed") cfg.synth.seed = std::stoull(value);
        else if (key == "synth.cycles_per_class") cfg.synth.cycles_per_class = std::stoi(value);
        else if (key == "synth.normal_len") cfg.synth.normal_len = std::stoi(value);
        else if (key == "synth.velocity_len") cfg.synth.velocity_len = std::stoi(value);
        else if (key == "synth.weight_len") cfg.synth.weight_len = std::stoi(value);
        else if (key == "synth.noise_std") cfg.synth.noise_std = std::stod(value);
        else if (key == "synth.duration_jitter") cfg.synth.duration_jitter = std::stod(value);
        else if (key == "synth.velocity_amplitude") cfg.synth.velocity_amplitude = std::stod(value);
        else if (key == "csv_paths") cfg.csv_paths = split_list(value);
        else if (key == "csv_labels") cfg.csv_labels = split_list(value);
        else if (key == "feature_columns") cfg.feature_columns = split_list(value);
        else if (key == "rate_hz") cfg.rate_hz = std::stod(value);
        else if (key == "train_fraction") cfg.train_fraction = std::stod(value);
        else if (key == "normalize") cfg.normalize = value == "true" || value == "1";
        else if (key == "k") cfg.k = std::stoi(value);
        else if (key == "miner") cfg.miner = value;
        else if (key == "noise_threshold") cfg.noise_threshold = std::stod(value);
        else if (key == "and_threshold") cfg.and_threshold = std::stod(value);
        else if (key == "bins") cfg.bins = std::stoul(value);
        else if (key == "n_sims") cfg.n_sims = std::stoul(value);
        else if (key == "max_events") cfg.max_events = std::stoul(value);
        else if (key == "n_reps") cfg.n_reps = std::stoul(value);
        else if (key == "sweep_k") {
            cfg.sweep_k.clear();
            for (const auto& v : split_list(value)) cfg.sweep_k.push_back(std::stoi(v));
        } else if (key == "sweep_miners") cfg.sweep_miners = split_list(value);
        else if (key == "acc_levels") {
            cfg.acc_levels.clear();
            for (const auto& v : split_list(value)) cfg.acc_levels.push_back(std::stod(v));
        } else if (key == "seed") cfg.seed = std::stoull(value);
        else if (key == "align_node_budget") cfg.align_node_budget = std::stoul(value);
        else if (key == "align_time_limit_s") cfg.align_time_limit_s = std::stod(value);
        else if (key == "soundness_budget") cfg.soundness_budget = std::stoul(value);
        else if (key == "output_dir") cfg.output_dir = value;
        else throw ConfigError("unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
        throw ConfigError("invalid value for '" + key + "': " + value);
    } catch (const std::out_of_range&) {
        throw ConfigError("value out of range for '" + key + "': " + value);
    }
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    RunConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
            continue;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        apply_config_entry(cfg, key, value);
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// dataset persistence
// ---------------------------------------------------------------------------

void save_dataset(const std::filesystem::path& dir, const Dataset& ds, std::uint64_t seed) {
    std::filesystem::create_directories(dir);
    std::ostringstream csv;
    csv.precision(17);
    csv << "window_id,t";
    for (const auto& f : ds.feature_names) csv << ',' << f;
    csv << '\n';
    for (std::size_t i = 0; i < ds.windows.size(); ++i) {
        for (std::size_t t = 0; t < ds.windows[i].samples.size(); ++t) {
            csv << i << ',' << t;
            for (const double v : ds.windows[i].samples[t]) csv << ',' << v;
            csv << '\n';
        }
    }
    write_file(dir / "windows.csv", csv.str());

    nlohmann::json manifest;
    manifest["sampling_rate_hz"] = ds.rate_hz;
    manifest["feature_names"] = ds.feature_names;
    manifest["seed"] = seed;
    manifest["windows"] = nlohmann::json::array();
    std::vector<std::string> split(ds.windows.size(), "test");
    for (const auto i : ds.train_ids) split[i] = "train";
    for (std::size_t i = 0; i < ds.windows.size(); ++i) {
        manifest["windows"].push_back({{"id", i},
                                       {"label", ds.windows[i].label},
                                       {"start", ds.windows[i].start},
                                       {"end", ds.windows[i].end},
                                       {"split", split[i]}});
    }
    write_file(dir / "manifest.json", manifest.dump(2));
}

Dataset load_dataset(const std::filesystem::path& dir) {
    const auto manifest = nlohmann::json::parse(read_file(dir / "manifest.json"));
    Dataset ds;
    ds.rate_hz = manifest.at("sampling_rate_hz").get<double>();
    ds.feature_names = manifest.at("feature_names").get<std::vector<std::string>>();

    ds.windows.resize(manifest.at("windows").size());
    for (const auto& jw : manifest.at("windows")) {
        const auto id = jw.at("id").get<std::size_t>();
        if (id >= ds.windows.size()) throw ConfigError("dataset manifest: window id out of range");
        ds.windows[id].parent_id = "dataset";
        ds.windows[id].label = jw.at("label").get<std::string>();
        ds.windows[id].start = jw.at("start").get<std::size_t>();
        ds.windows[id].end = jw.at("end").get<std::size_t>();
        if (jw.at("split").get<std::string>() == "train")
            ds.train_ids.push_back(id);
        else
            ds.test_ids.push_back(id);
    }
    std::sort(ds.train_ids.begin(), ds.train_ids.end());
    std::sort(ds.test_ids.begin(), ds.test_ids.end());

    // samples
    std::istringstream in(read_file(dir / "windows.csv"));
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');
        const auto id = static_cast<std::size_t>(std::stoul(cell));
        std::getline(row, cell, ','); // t
        std::vector<double> sample;
        while (std::getline(row, cell, ',')) sample.push_back(std::stod(cell));
        if (id >= ds.windows.size()) throw ConfigError("windows.csv: window id out of range");
        ds.windows[id].samples.push_back(std::move(sample));
    }
    return ds;
}

std::vector<TimeSeriesWindow> load_windows_csv(const std::filesystem::path& csv) {
    std::istringstream in(read_file(csv));
    std::string line;
    if (!std::getline(in, line)) return {};
    std::map<std::size_t, TimeSeriesWindow> by_id;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');
        const auto id = static_cast<std::size_t>(std::stoul(cell));
        std::getline(row, cell, ','); // t
        std::vector<double> sample;
        while (std::getline(row, cell, ',')) sample.push_back(std::stod(cell));
        auto& w = by_id[id];
        w.parent_id = "input";
        w.label = "unknown";
        w.samples.push_back(std::move(sample));
    }
    std::vector<TimeSeriesWindow> out;
    out.reserve(by_id.size());
    for (auto& [id, w] : by_id) {
        w.end = w.samples.empty() ? 0 : w.samples.size() - 1;
        out.push_back(std::move(w));
    }
    return out;
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

namespace {

Dataset make_dataset(const RunConfig& cfg) {
    Dataset ds;
    ds.rate_hz = cfg.rate_hz;
    if (cfg.source == "synth") {
        auto result = synth_generate(cfg.synth);
        auto series = cfg.normalize ? normalize_minmax(result.series) : std::move(result.series);
        ds.rate_hz = series.sampling_rate_hz;
        ds.feature_names = series.feature_names;
        for (auto& w : result.windows) {
            ds.windows.push_back(
                slice_window(series, w.parent_id, w.start, w.end, w.label));
        }
    } else {
        for (std::size_t i = 0; i < cfg.csv_paths.size(); ++i) {
            auto series = load_csv(cfg.csv_paths[i], cfg.feature_columns, cfg.rate_hz);
            if (cfg.normalize) series = normalize_minmax(series);
            ds.feature_names = series.feature_names;
            // fixed-length tiling; real deployments would run threshold_detect
            const std::size_t len = 50;
            for (std::size_t start = 0; start + len <= series.size(); start += len)
                ds.windows.push_back(slice_window(series, cfg.csv_paths[i], start,
                                                  start + len - 1, cfg.csv_labels[i]));
        }
    }

    // per-label holdout split
    std::map<std::string, std::vector<std::size_t>> by_label;
    for (std::size_t i = 0; i < ds.windows.size(); ++i) by_label[ds.windows[i].label].push_back(i);
    std::uint64_t stream = 0;
    for (const auto& [label, ids] : by_label) {
        Rng rng(derive_seed(cfg.seed, 7000 + stream++));
        std::vector<std::size_t> shuffled = ids;
        for (std::size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[rng.uniform_index(i)]);
        const auto n_train = static_cast<std::size_t>(
            std::llround(cfg.train_fraction * static_cast<double>(ids.size())));
        for (std::size_t i = 0; i < shuffled.size(); ++i)
            (i < n_train ? ds.train_ids : ds.test_ids).push_back(shuffled[i]);
    }
    std::sort(ds.train_ids.begin(), ds.train_ids.end());
    std::sort(ds.test_ids.begin(), ds.test_ids.end());
    return ds;
}

std::map<std::string, std::vector<TimeSeriesWindow>> fault_windows(
    const Dataset& ds, const std::vector<std::size_t>& ids) {
    std::map<std::string, std::vector<TimeSeriesWindow>> out;
    for (const auto i : ids)
        if (ds.windows[i].label != kNormalLabel) out[ds.windows[i].label].push_back(ds.windows[i]);
    return out;
}

std::string format_double(double v) {
    std::ostringstream out;
    out.precision(10);
    out << v;
    return out.str();
}

} // namespace

namespace {

// a missing parent is almost always a typo in output_dir
void check_output_parent(const std::filesystem::path& output_dir) {
    const auto parent = output_dir.parent_path();
    if (!parent.empty() && !std::filesystem::exists(parent))
        throw ConfigError("output directory parent does not exist: " + parent.string());
}

} // namespace

std::filesystem::path cmd_synth(const RunConfig& cfg) {
    cfg.validate();
    check_output_parent(cfg.output_dir);
    const auto ds = make_dataset(cfg);
    const auto dir = cfg.output_dir / "dataset";
    save_dataset(dir, ds, cfg.seed);
    std::cout << "dataset: " << ds.windows.size() << " windows ("
              << ds.train_ids.size() << " train / " << ds.test_ids.size() << " test) -> "
              << dir.string() << "\n";
    return dir;
}

std::filesystem::path cmd_build(const RunConfig& cfg, const std::filesystem::path& dataset_dir) {
    cfg.validate();
    check_output_parent(cfg.output_dir);
    const auto ds = load_dataset(dataset_dir);
    const auto training = fault_windows(ds, ds.train_ids);
    if (training.empty()) throw EmptyInputError("dataset has no fault-labeled training windows");

    auto dict_cfg = cfg.dictionary_config();
    dict_cfg.rate_hz = ds.rate_hz;
    const auto entries = build_dictionary(training, dict_cfg);

    const auto dir = cfg.output_dir / "dictionary";
    save_dictionary(dir, entries, ds.feature_names);
    for (const auto& entry : entries) {
        write_file(dir / entry.fault_label / "net.dot", export_dot(entry.spn.net));
        // event log in JSON and flat CSV for external process-mining tools
        const auto log =
            build_log(training.at(entry.fault_label), entry.centroids, ds.rate_hz);
        write_file(dir / entry.fault_label / "log.json", log_to_json(log));
        write_file(dir / entry.fault_label / "log.csv", log_to_csv(log));
        const auto s_arc = arc_degree_simplicity(entry.spn.net);
        std::cout << entry.fault_label << ": |P|+|Tr|="
                  << entry.spn.net.n_places() + entry.spn.net.n_transitions()
                  << " S_arc=" << format_double(s_arc) << " soundness="
                  << (entry.soundness.sound()
                          ? "Sound"
                          : entry.soundness.unsound() ? "NS (" + entry.soundness.reason + ")"
                                                      : "Unknown")
                  << " sims=" << entry.sim_pool.size() << "\n";
        if (entry.soundness.unsound())
            std::cout << "warning: " << entry.fault_label
                      << " net is non-sound; persisted without simulations and unusable for "
                         "diagnosis\n";
    }
    std::cout << "dictionary -> " << dir.string() << "\n";
    return dir;
}

std::filesystem::path cmd_diagnose(const RunConfig& cfg, const std::filesystem::path& dict_dir,
                                   const std::filesystem::path& windows_csv) {
    cfg.validate();
    const auto dict = load_dictionary(dict_dir);
    const auto windows = load_windows_csv(windows_csv);
    std::filesystem::create_directories(cfg.output_dir);

    std::ostringstream report;
    report.precision(10);
    report << "window_id,predicted";
    for (const auto& entry : dict)
        report << ",fitness_" << entry.fault_label << ",rmse_" << entry.fault_label << ",r2_"
               << entry.fault_label << ",cc_time_s_" << entry.fault_label;
    report << '\n';

    nlohmann::json results = nlohmann::json::array();
    for (std::size_t i = 0; i < windows.size(); ++i) {
        const auto result = identify(windows[i], dict, cfg.align_options());
        report << i << ',' << result.fault_label;
        nlohmann::json jr;
        jr["window_id"] = i;
        jr["predicted"] = result.fault_label;
        jr["vote_indices"] = result.vote_indices;
        jr["scores"] = nlohmann::json::array();
        for (const auto& s : result.scores) {
            report << ',' << s.fitness << ',' << s.best_rmse << ',' << s.best_r2 << ','
                   << s.cc_time_s;
            jr["scores"].push_back({{"fault", s.fault_label},
                                    {"fitness", s.fitness},
                                    {"best_rmse", s.best_rmse},
                                    {"best_r2", s.best_r2},
                                    {"cc_time_s", s.cc_time_s}});
        }
        report << '\n';
        results.push_back(std::move(jr));
    }
    const auto report_path = cfg.output_dir / "report.csv";
    write_file(report_path, report.str());
    write_file(cfg.output_dir / "results.json", results.dump(2));
    std::cout << "diagnosed " << windows.size() << " windows -> " << report_path.string() << "\n";
    return report_path;
}

namespace {

struct CellMetrics {
    double s_arc = 0.0, r2_val = 0.0, rmse_val = 0.0, f1 = 0.0, cc_time = 0.0;
};

CellMetrics run_cell(const RunConfig& cfg, const Dataset& ds,
                     const std::map<std::string, std::vector<TimeSeriesWindow>>& training,
                     const std::map<std::string, std::vector<TimeSeriesWindow>>& test, int k,
                     const std::string& miner, std::uint64_t rep_seed) {
    auto dict_cfg = cfg.dictionary_config();
    dict_cfg.k = k;
    dict_cfg.miner = miner;
    dict_cfg.seed = rep_seed;
    dict_cfg.rate_hz = ds.rate_hz;
    const auto dict = build_dictionary(training, dict_cfg);
    for (const auto& entry : dict)
        if (entry.soundness.unsound())
            throw UnsoundModelError("fault '" + entry.fault_label + "' net non-sound");

    CellMetrics m;
    for (const auto& entry : dict) m.s_arc += arc_degree_simplicity(entry.spn.net);
    m.s_arc /= static_cast<double>(dict.size());

    // simulation comparison per fault over its own test windows
    std::size_t n_compared = 0;
    for (const auto& entry : dict) {
        const auto it = test.find(entry.fault_label);
        if (it == test.end()) continue;
        for (const auto& w : it->second) {
            double best_rmse = std::numeric_limits<double>::infinity();
            double best_r2 = -std::numeric_limits<double>::infinity();
            for (const auto& sim : entry.sim_pool) {
                best_rmse = std::min(best_rmse, rmse(w.samples, sim.samples));
                try {
                    best_r2 = std::max(best_r2, r2(w.samples, sim.samples));
                } catch (const ZeroVarianceObservedError&) {
                    best_r2 = std::max(best_r2, 0.0);
                }
            }
            m.rmse_val += best_rmse;
            m.r2_val += best_r2;
            ++n_compared;
        }
    }
    if (n_compared > 0) {
        m.rmse_val /= static_cast<double>(n_compared);
        m.r2_val /= static_cast<double>(n_compared);
    }

    const auto report = evaluate(dict, test, dict_cfg.align);
    m.f1 = report.macro_f1;
    m.cc_time = report.mean_cc_time_s;
    return m;
}

} // namespace

std::filesystem::path cmd_sweep(const RunConfig& cfg, const std::filesystem::path& dataset_dir) {
    cfg.validate();
    const auto ds = load_dataset(dataset_dir);
    const auto training = fault_windows(ds, ds.train_ids);
    const auto test = fault_windows(ds, ds.test_ids);
    if (training.empty() || test.empty())
        throw EmptyInputError("dataset lacks fault-labeled train or test windows");

    std::ostringstream table;
    table << "k,miner,s_arc_mean,s_arc_std,r2_mean,r2_std,rmse_mean,rmse_std,f1_mean,f1_std,"
             "cc_time_mean,cc_time_std\n";
    for (const int k : cfg.sweep_k) {
        for (const auto& miner : cfg.sweep_miners) {
            std::vector<CellMetrics> reps;
            std::string failure;
            for (std::size_t rep = 0; rep < cfg.n_reps && failure.empty(); ++rep) {
                try {
                    reps.push_back(run_cell(cfg, ds, training, test, k, miner,
                                            derive_seed(cfg.seed, rep)));
                } catch (const UnsoundModelError&) {
                    failure = "NS";
                } catch (const SearchBudgetExceededError&) {
                    failure = "TE";
                } catch (const AlignTimeoutError&) {
                    failure = "TE";
                } catch (const FaultBuildError& e) {
                    failure = std::string(e.what()).find("non-sound") != std::string::npos ||
                                      std::string(e.what()).find("unreachable") !=
                                          std::string::npos
                                  ? "NS"
                                  : "TE";
                }
            }
            table << k << ',' << miner;
            if (!failure.empty()) {
                for (int col = 0; col < 10; ++col) table << ',' << failure;
                table << '\n';
                std::cout << "cell k=" << k << " miner=" << miner << ": " << failure << "\n";
                continue;
            }
            auto stat = [&](auto getter) {
                double mean = 0.0;
                for (const auto& r : reps) mean += getter(r);
                mean /= static_cast<double>(reps.size());
                double var = 0.0;
                for (const auto& r : reps) var += (getter(r) - mean) * (getter(r) - mean);
                return std::make_pair(mean, std::sqrt(var / static_cast<double>(reps.size())));
            };
            const auto s_arc = stat([](const CellMetrics& r) { return r.s_arc; });
            const auto r2s = stat([](const CellMetrics& r) { return r.r2_val; });
            const auto rmses = stat([](const CellMetrics& r) { return r.rmse_val; });
            const auto f1s = stat([](const CellMetrics& r) { return r.f1; });
            const auto ccs = stat([](const CellMetrics& r) { return r.cc_time; });
            table.precision(10);
            table << ',' << s_arc.first << ',' << s_arc.second << ',' << r2s.first << ','
                  << r2s.second << ',' << rmses.first << ',' << rmses.second << ',' << f1s.first
                  << ',' << f1s.second << ',' << ccs.first << ',' << ccs.second << '\n';
            std::cout << "cell k=" << k << " miner=" << miner
                      << ": f1=" << format_double(f1s.first)
                      << " s_arc=" << format_double(s_arc.first) << "\n";
        }
    }
    std::filesystem::create_directories(cfg.output_dir);
    const auto path = cfg.output_dir / "sweep.csv";
    write_file(path, table.str());
    std::cout << "sweep table -> " << path.string() << "\n";
    return path;
}

std::filesystem::path cmd_ablate(const RunConfig& cfg, const std::filesystem::path& dataset_dir) {
    cfg.validate();
    const auto ds = load_dataset(dataset_dir);
    const auto test = fault_windows(ds, ds.test_ids);

    std::vector<TimeSeriesWindow> normal_train;
    for (const auto i : ds.train_ids)
        if (ds.windows[i].label == kNormalLabel) normal_train.push_back(ds.windows[i]);
    std::map<std::string, LabeledWindowPool> pools;
    for (const auto& [label, windows] : fault_windows(ds, ds.train_ids)) {
        pools[label].positives = windows;
        pools[label].negatives = normal_train;
    }
    if (pools.empty() || test.empty())
        throw EmptyInputError("dataset lacks fault-labeled train or test windows");

    auto dict_cfg = cfg.dictionary_config();
    dict_cfg.rate_hz = ds.rate_hz;
    const auto rows = ablate_accuracy(pools, test, cfg.acc_levels, dict_cfg, cfg.seed, cfg.n_reps);

    std::ostringstream out;
    out.precision(10);
    out << "acc,f1_mean,f1_std";
    for (std::size_t rep = 0; rep < cfg.n_reps; ++rep) out << ",f1_rep" << rep;
    out << '\n';
    for (const auto& row : rows) {
        out << row.acc << ',' << row.mean_f1 << ',' << row.std_f1;
        for (const double v : row.rep_f1) out << ',' << v;
        out << '\n';
        std::cout << "acc=" << row.acc << " f1=" << format_double(row.mean_f1) << " +- "
                  << format_double(row.std_f1) << "\n";
    }
    std::filesystem::create_directories(cfg.output_dir);
    const auto path = cfg.output_dir / "ablation.csv";
    write_file(path, out.str());
    std::cout << "ablation table -> " << path.string() << "\n";
    return path;
}

std::filesystem::path cmd_export_dot(const std::filesystem::path& net_json,
                                     const std::filesystem::path& out_dot) {
    const auto net = net_from_json(read_file(net_json));
    write_file(out_dot, export_dot(net));
    std::cout << "dot -> " << out_dot.string() << "\n";
    return out_dot;
}

} // namespace pmfd
