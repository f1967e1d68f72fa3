#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "netgauntlet/classifier.hpp"
#include "netgauntlet/dataset.hpp"

namespace netgauntlet {

/// Effective configuration of one CLI invocation. Precedence: command-line
/// flags > config file named by NETGAUNTLET_CONFIG > these defaults. The
/// resolved config is echoed into every output file so each reported number
/// can be re-derived.
struct RunConfig {
    std::string data;                // input CSV
    std::string schema = "kdd99";    // "kdd99" or a schema file path
    std::string label_mode = "binary";
    std::size_t sample = 0;          // 0 = keep all records
    double corr_threshold = 0.5;
    double mi_threshold = 0.001;
    int bins = 10;
    std::string bin_strategy = "width";
    std::string classifier = "all";
    bool compare = false;
    int k = 10;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string out = ".";
    bool literal_accuracy = false;   // also report the TP/total accuracy variant
    bool header = false;             // input file carries a header line
    std::string model;               // predict: model file path

    TrainConfig train;               // hyperparameter overrides; kind set per run

    void validate() const;
    nlohmann::json to_json() const;
};

/// Applies recognized keys of a JSON config object over `base`.
/// Unknown keys are a config error.
RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base);
RunConfig load_run_config_file(const std::string& path, RunConfig base);

LabelScheme scheme_for(const RunConfig& cfg);
Dataset load_input(const RunConfig& cfg);
std::vector<ClassifierKind> classifiers_for(const RunConfig& cfg);

/// Writes via a temp file in the same directory, renaming onto the target
/// only after a complete write, so failures never leave partial outputs.
void write_text_file(const std::string& path, const std::string& content);

int cmd_select(const RunConfig& cfg);
int cmd_train(const RunConfig& cfg);
int cmd_predict(const RunConfig& cfg);
int cmd_evaluate(const RunConfig& cfg);

/// CLI exit code for an escaped exception: config 2, data 3, divergence 4,
/// schema mismatch 5, anything else 1.
int exit_code_for(const std::exception& e);

} // namespace netgauntlet
