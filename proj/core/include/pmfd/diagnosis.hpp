#ifndef PMFD_DIAGNOSIS_HPP
#define PMFD_DIAGNOSIS_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pmfd/conformance.hpp"
#include "pmfd/detect.hpp"
#include "pmfd/eventlog.hpp"
#include "pmfd/stochastic.hpp"
#include "pmfd/timeseries.hpp"

namespace pmfd {

struct DictionaryConfig {
    int k = 5;
    std::string miner = "imf"; // imf | hm
    double noise_threshold = 0.75;
    double and_threshold = 0.65;
    std::size_t bins = 10;
    std::size_t n_sims = 300;
    std::size_t max_events = 200;
    double rate_hz = 10.0;
    std::uint64_t seed = 1;
    std::size_t soundness_budget = 100000;
    AlignOptions align;
};

/// Offline per-fault bundle: clustering, stochastic net, simulation pool.
struct FaultDictionaryEntry {
    std::string fault_label;
    Centroids centroids;
    StochasticPetriNet spn;
    std::vector<SimulatedWindow> sim_pool;
    SoundnessResult soundness;
    std::size_t min_visible_completion = 0; // cached for fitness
    struct Provenance {
        int k = 0;
        std::string miner;
        double noise_threshold = 0.0;
        std::uint64_t seed = 0;
    } provenance;

    /// Non-sound nets are persisted for inspection but cannot be diagnosed
    /// against; their simulation pool stays empty.
    bool usable() const { return !soundness.unsound() && !sim_pool.empty(); }
};

/// Runs phases 2-4 per fault: fit centroids, build the log, discover the net,
/// enhance with state time histograms, simulate the pool. Errors are rethrown
/// as FaultBuildError naming the fault.
std::vector<FaultDictionaryEntry> build_dictionary(
    const std::map<std::string, std::vector<TimeSeriesWindow>>& training,
    const DictionaryConfig& cfg);

struct FaultScores {
    std::string fault_label;
    double fitness = 0.0;
    double best_rmse = 0.0;
    double best_r2 = 0.0;
    double cc_time_s = 0.0;
};

struct DiagnosisResult {
    std::string fault_label;
    std::vector<FaultScores> scores;                // one per dictionary entry
    std::array<std::size_t, 3> vote_indices{0, 0, 0}; // argmax F, argmin RMSE, argmax R2
};

/// Algorithm-style identification: per fault, discretize the window with that
/// fault's centroids, compute fitness against its net, and the best RMSE/R2
/// over its simulation pool; majority vote over the three argbest indices,
/// three-way ties resolved by the fitness index.
/// Throws NoTransitionsInWindowError if no entry can discretize the window.
DiagnosisResult identify(const TimeSeriesWindow& window,
                         const std::vector<FaultDictionaryEntry>& dict,
                         const AlignOptions& options = {});

/// 2TP / (2TP + FP + FN); 0 when the denominator vanishes.
double f1_score(std::size_t tp, std::size_t fp, std::size_t fn);

struct EvaluationReport {
    struct PerFault {
        std::string label;
        std::size_t tp = 0, fp = 0, fn = 0;
        double f1 = 0.0;
        double mean_cc_time_s = 0.0;
    };
    std::vector<PerFault> per_fault;
    std::map<std::string, std::map<std::string, std::size_t>> confusion; // true -> predicted
    double macro_f1 = 0.0;
    double mean_cc_time_s = 0.0;
    double median_cc_time_s = 0.0;

    std::string to_csv() const;
};

/// One-vs-rest F1 per fault over the labeled test windows, plus conformance
/// checking wall times per align call.
EvaluationReport evaluate(const std::vector<FaultDictionaryEntry>& dict,
                          const std::map<std::string, std::vector<TimeSeriesWindow>>& test,
                          const AlignOptions& options = {});

struct AblationRow {
    double acc = 0.0;
    double mean_f1 = 0.0;
    double std_f1 = 0.0;
    std::vector<double> rep_f1; // macro F1 per repetition
};

/// For each accuracy level: compose contaminated training sets from the
/// pools, rebuild the dictionary, and evaluate on the given test windows;
/// repeated n_reps times with derived seeds.
std::vector<AblationRow> ablate_accuracy(
    const std::map<std::string, LabeledWindowPool>& pools,
    const std::map<std::string, std::vector<TimeSeriesWindow>>& test,
    const std::vector<double>& acc_levels, const DictionaryConfig& cfg, std::uint64_t seed,
    std::size_t n_reps = 3);

/// Dictionary directory: manifest.json plus per fault net.json, hist.csv,
/// centroids.json and sims/NNN.csv.
void save_dictionary(const std::filesystem::path& dir,
                     const std::vector<FaultDictionaryEntry>& entries,
                     const std::vector<std::string>& feature_names);
std::vector<FaultDictionaryEntry> load_dictionary(const std::filesystem::path& dir);

} // namespace pmfd

#endif
