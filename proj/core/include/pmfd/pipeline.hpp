#ifndef PMFD_PIPELINE_HPP
#define PMFD_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pmfd/diagnosis.hpp"
#include "pmfd/timeseries.hpp"

namespace pmfd {

/// End-to-end run configuration; loadable from a key = value file, with every
/// field overridable from the command line.
struct RunConfig {
    // data source
    std::string source = "synth"; // synth | csv
    SynthSpec synth;
    std::vector<std::string> csv_paths;  // one per fault label
    std::vector<std::string> csv_labels; // parallel to csv_paths
    std::vector<std::string> feature_columns = {"x_acc", "y_acc", "z_acc"};
    double rate_hz = 10.0;
    double train_fraction = 0.75;
    bool normalize = true;

    // modeling
    int k = 5;
    std::string miner = "imf"; // imf | hm
    double noise_threshold = 0.75;
    double and_threshold = 0.65;
    std::size_t bins = 10;
    std::size_t n_sims = 300;
    std::size_t max_events = 200;

    // experiment protocol
    std::size_t n_reps = 3;
    std::vector<int> sweep_k = {2, 3, 4, 5, 6};
    std::vector<std::string> sweep_miners = {"imf", "hm"};
    std::vector<double> acc_levels = {1.0, 0.9, 0.75, 0.5};
    std::uint64_t seed = 1;

    // budgets
    std::size_t align_node_budget = 1000000;
    double align_time_limit_s = 300.0;
    std::size_t soundness_budget = 100000;

    std::filesystem::path output_dir = "out";

    void validate() const; // throws ConfigError naming the field
    DictionaryConfig dictionary_config() const;
    AlignOptions align_options() const;
};

/// Parses a key = value config file ('#' starts a comment).
RunConfig load_config(const std::filesystem::path& path);
/// Applies one key=value pair, as parsed from the file or a CLI override.
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

/// synth: writes <out>/dataset/{windows.csv, manifest.json}.
std::filesystem::path cmd_synth(const RunConfig& cfg);

/// build: reads a dataset directory, builds the fault dictionary, writes
/// <out>/dictionary plus one DOT file per fault; prints S_arc and soundness.
std::filesystem::path cmd_build(const RunConfig& cfg, const std::filesystem::path& dataset_dir);

/// diagnose: classifies every window of a windows CSV against a dictionary;
/// writes report.csv and results.json into the output directory.
std::filesystem::path cmd_diagnose(const RunConfig& cfg, const std::filesystem::path& dict_dir,
                                   const std::filesystem::path& windows_csv);

/// sweep: K x miner factorial over the dataset; one row per cell with
/// mean/std over n_reps repetitions; failed cells carry NS or TE.
std::filesystem::path cmd_sweep(const RunConfig& cfg, const std::filesystem::path& dataset_dir);

/// ablate: detection-accuracy ablation rows (acc, mean F1, std F1).
std::filesystem::path cmd_ablate(const RunConfig& cfg, const std::filesystem::path& dataset_dir);

/// export-dot: renders a net.json as DOT.
std::filesystem::path cmd_export_dot(const std::filesystem::path& net_json,
                                     const std::filesystem::path& out_dot);

/// Dataset directory helpers shared by the commands and tests.
struct Dataset {
    double rate_hz = 10.0;
    std::vector<std::string> feature_names;
    std::vector<TimeSeriesWindow> windows;          // all, labeled
    std::vector<std::size_t> train_ids, test_ids;   // indices into windows
};
void save_dataset(const std::filesystem::path& dir, const Dataset& ds, std::uint64_t seed);
Dataset load_dataset(const std::filesystem::path& dir);
std::vector<TimeSeriesWindow> load_windows_csv(const std::filesystem::path& csv);

} // namespace pmfd

#endif
