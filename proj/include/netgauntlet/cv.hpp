#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "netgauntlet/classifier.hpp"
#include "netgauntlet/dataset.hpp"
#include "netgauntlet/folds.hpp"
#include "netgauntlet/metrics.hpp"
#include "netgauntlet/selection.hpp"

namespace netgauntlet {

/// Cross-validation outcome. The aggregate is micro-averaged: ratio metrics
/// recomputed from the summed per-fold confusion matrix; AUC is the mean of
/// per-fold AUCs; build_seconds is the mean per-fold build time.
struct CvResult {
    std::vector<MetricsReport> folds;
    MetricsReport aggregate;

    int k = 0;
    std::uint64_t plan_seed = 0;
    std::uint64_t plan_fingerprint = 0;
    std::size_t n_records = 0;
    nlohmann::json train_config;
    std::vector<int> features_used;
    bool used_selection = false;
    std::vector<nlohmann::json> fold_models; // populated only when keep_models

    nlohmann::json to_json(bool include_literal = false) const;
    std::string to_csv(bool include_literal = false) const;
};

std::uint64_t fold_plan_fingerprint(const FoldPlan& plan);

/// Per fold: train on the other k-1 folds (binning edges, normalization
/// ranges, and category tables all refit on those rows inside the trainers),
/// predict the held-out fold, time the train call. Multi-class predictions
/// are collapsed to binary (normal vs attack) for the metric suite, with
/// attack positive and 1 - P(normal) as the ranking score.
CvResult cross_validate(const Dataset& data, const SelectionReport* selection,
                        const TrainConfig& config, const FoldPlan& plan,
                        bool keep_models = false);

/// One Table-style comparison line for a classifier evaluated with and
/// without feature selection on the same plan and config.
struct ComparisonRow {
    std::string classifier;
    MetricsReport with_selection;
    MetricsReport without_selection;
    double accuracy_delta = 0.0; // with - without, as a fraction

    nlohmann::json to_json(bool include_literal = false) const;
};

ComparisonRow compare_runs(const CvResult& with_selection, const CvResult& without_selection);

std::string comparison_csv(const std::vector<ComparisonRow>& rows);

} // namespace netgauntlet
