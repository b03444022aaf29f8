// Command line front end for the fault diagnosis pipeline.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pmfd/errors.hpp"
#include "pmfd/pipeline.hpp"

namespace {

pmfd::RunConfig resolve_config(const std::string& config_path,
                               const std::vector<std::string>& overrides) {
    pmfd::RunConfig cfg;
    if (!config_path.empty()) cfg = pmfd::load_config(config_path);
    for (const auto& entry : overrides) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw pmfd::ConfigError("--set expects key=value, got '" + entry + "'");
        pmfd::apply_config_entry(cfg, entry.substr(0, eq), entry.substr(eq + 1));
    }
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Process-mining-driven fault diagnosis for cyber-physical systems"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    app.add_option("-c,--config", config_path, "key = value configuration file");
    app.add_option("-s,--set", overrides, "override a config entry, e.g. --set k=5");

    auto* synth = app.add_subcommand("synth", "generate the synthetic benchmark dataset");

    std::string dataset_dir;
    auto* build = app.add_subcommand("build", "build the fault dictionary from a dataset");
    build->add_option("dataset", dataset_dir, "dataset directory")->required();

    std::string dict_dir, windows_csv;
    auto* diagnose = app.add_subcommand("diagnose", "classify windows against a dictionary");
    diagnose->add_option("dictionary", dict_dir, "dictionary directory")->required();
    diagnose->add_option("windows", windows_csv, "windows CSV file")->required();

    std::string sweep_dataset;
    auto* sweep = app.add_subcommand("sweep", "K x miner factorial experiment");
    sweep->add_option("dataset", sweep_dataset, "dataset directory")->required();

    std::string ablate_dataset;
    auto* ablate = app.add_subcommand("ablate", "detection-accuracy ablation");
    ablate->add_option("dataset", ablate_dataset, "dataset directory")->required();

    std::string net_json, out_dot;
    auto* export_dot_cmd = app.add_subcommand("export-dot", "render a net.json as GraphViz DOT");
    export_dot_cmd->add_option("net", net_json, "net.json file")->required();
    export_dot_cmd->add_option("out", out_dot, "output .dot path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const auto cfg = resolve_config(config_path, overrides);
        if (synth->parsed()) {
            pmfd::cmd_synth(cfg);
        } else if (build->parsed()) {
            pmfd::cmd_build(cfg, dataset_dir);
        } else if (diagnose->parsed()) {
            pmfd::cmd_diagnose(cfg, dict_dir, windows_csv);
        } else if (sweep->parsed()) {
            pmfd::cmd_sweep(cfg, sweep_dataset);
        } else if (ablate->parsed()) {
            pmfd::cmd_ablate(cfg, ablate_dataset);
        } else if (export_dot_cmd->parsed()) {
            pmfd::cmd_export_dot(net_json, out_dot);
        }
    } catch (const pmfd::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
