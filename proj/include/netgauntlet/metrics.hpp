#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace netgauntlet {

struct ConfusionMatrix {
    long long tp = 0;
    long long fp = 0;
    long long tn = 0;
    long long fn = 0;
    int positive_class = 1;

    long long total() const { return tp + fp + tn + fn; }
};

ConfusionMatrix confusion(std::span<const int> predicted, std::span<const int> truth,
                          int positive_class);

double accuracy(const ConfusionMatrix& cm);         // (TP+TN) / total
double accuracy_literal(const ConfusionMatrix& cm); // TP / total (audit variant)
double error_rate(const ConfusionMatrix& cm);       // 1 - accuracy
double precision(const ConfusionMatrix& cm);        // TP / (TP+FP); 0 when undefined
double recall(const ConfusionMatrix& cm);           // TP / (TP+FN); 0 when undefined
double detection_rate(const ConfusionMatrix& cm);   // == recall with attack positive
double false_alarm_rate(const ConfusionMatrix& cm); // FP / (FP+TN); 0 when undefined

/// Mann-Whitney AUC: fraction of (positive, negative) pairs where the
/// positive record scores strictly higher, ties counting 1/2. Computed via
/// tie-averaged ranks, which is pairwise-exact. nullopt when the truth
/// contains a single class.
std::optional<double> auc(std::span<const double> scores, std::span<const int> truth,
                          int positive_class);

/// One evaluated prediction set. Undefined ratios are reported as 0 with the
/// metric named in `flags`; auc_defined mirrors the AUC sentinel.
struct MetricsReport {
    ConfusionMatrix cm;
    double accuracy = 0.0;
    double accuracy_literal = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double error_rate = 0.0;
    double detection_rate = 0.0;
    double false_alarm_rate = 0.0;
    double auc = 0.0;
    bool auc_defined = false;
    std::vector<std::string> flags;
    double build_seconds = 0.0;

    nlohmann::json to_json(bool include_literal = false) const;
    static MetricsReport from_json(const nlohmann::json& j);
};

MetricsReport compute_metrics(std::span<const int> predicted, std::span<const int> truth,
                              std::span<const double> scores, int positive_class);

/// Ratio metrics recomputed from an already-summed confusion matrix
/// (micro-averaging); AUC fields left undefined for the caller to fill.
MetricsReport metrics_from_confusion(const ConfusionMatrix& cm);

} // namespace netgauntlet
