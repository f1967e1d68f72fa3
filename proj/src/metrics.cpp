#include "netgauntlet/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "netgauntlet/errors.hpp"

namespace netgauntlet {

namespace {

double ratio(long long num, long long den) {
    return den > 0 ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
}

} // namespace

ConfusionMatrix confusion(std::span<const int> predicted, std::span<const int> truth,
                          int positive_class) {
    if (predicted.size() != truth.size()) {
        throw ShapeError("prediction and truth lists differ in length");
    }
    if (predicted.empty()) throw SizeError("cannot evaluate zero predictions");
    ConfusionMatrix cm;
    cm.positive_class = positive_class;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const bool pred_pos = predicted[i] == positive_class;
        const bool true_pos = truth[i] == positive_class;
        if (pred_pos && true_pos) ++cm.tp;
        else if (pred_pos && !true_pos) ++cm.fp;
        else if (!pred_pos && true_pos) ++cm.fn;
        else ++cm.tn;
    }
    return cm;
}

double accuracy(const ConfusionMatrix& cm) { return ratio(cm.tp + cm.tn, cm.total()); }

double accuracy_literal(const ConfusionMatrix& cm) { return ratio(cm.tp, cm.total()); }

double error_rate(const ConfusionMatrix& cm) { return 1.0 - accuracy(cm); }

double precision(const ConfusionMatrix& cm) { return ratio(cm.tp, cm.tp + cm.fp); }

double recall(const ConfusionMatrix& cm) { return ratio(cm.tp, cm.tp + cm.fn); }

double detection_rate(const ConfusionMatrix& cm) { return recall(cm); }

double false_alarm_rate(const ConfusionMatrix& cm) { return ratio(cm.fp, cm.fp + cm.tn); }

std::optional<double> auc(std::span<const double> scores, std::span<const int> truth,
                          int positive_class) {
    if (scores.size() != truth.size()) throw ShapeError("scores and truth differ in length");
    if (scores.empty()) throw SizeError("cannot compute AUC of zero records");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // tie-averaged 1-based ranks
    double rank_pos_sum = 0.0;
    long long n_pos = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) {
            if (truth[order[k]] == positive_class) {
                rank_pos_sum += rank;
                ++n_pos;
            }
        }
        i = j + 1;
    }
    const long long n_neg = static_cast<long long>(scores.size()) - n_pos;
    if (n_pos == 0 || n_neg == 0) return std::nullopt;

    const double p = static_cast<double>(n_pos);
    const double n = static_cast<double>(n_neg);
    return (rank_pos_sum - p * (p + 1.0) / 2.0) / (p * n);
}

MetricsReport metrics_from_confusion(const ConfusionMatrix& cm) {
    MetricsReport r;
    r.cm = cm;
    r.accuracy = netgauntlet::accuracy(cm);
    r.accuracy_literal = netgauntlet::accuracy_literal(cm);
    r.error_rate = netgauntlet::error_rate(cm);
    r.precision = netgauntlet::precision(cm);
    r.recall = netgauntlet::recall(cm);
    r.detection_rate = netgauntlet::detection_rate(cm);
    r.false_alarm_rate = netgauntlet::false_alarm_rate(cm);
    if (cm.tp + cm.fp == 0) r.flags.push_back("precision_undefined");
    if (cm.tp + cm.fn == 0) {
        r.flags.push_back("recall_undefined");
        r.flags.push_back("detection_rate_undefined");
    }
    if (cm.fp + cm.tn == 0) r.flags.push_back("false_alarm_rate_undefined");
    return r;
}

MetricsReport compute_metrics(std::span<const int> predicted, std::span<const int> truth,
                              std::span<const double> scores, int positive_class) {
    MetricsReport r = metrics_from_confusion(confusion(predicted, truth, positive_class));
    const auto area = auc(scores, truth, positive_class);
    if (area.has_value()) {
        r.auc = *area;
        r.auc_defined = true;
    } else {
        r.flags.push_back("auc_undefined");
    }
    return r;
}

nlohmann::json MetricsReport::to_json(bool include_literal) const {
    nlohmann::json j{{"confusion",
                      {{"tp", cm.tp},
                       {"fp", cm.fp},
                       {"tn", cm.tn},
                       {"fn", cm.fn},
                       {"positive_class", cm.positive_class}}},
                     {"accuracy", accuracy},
                     {"precision", precision},
                     {"recall", recall},
                     {"error_rate", error_rate},
                     {"detection_rate", detection_rate},
                     {"false_alarm_rate", false_alarm_rate},
                     {"auc", auc},
                     {"auc_defined", auc_defined},
                     {"flags", flags},
                     {"build_seconds", build_seconds}};
    if (include_literal) j["accuracy_literal"] = accuracy_literal;
    return j;
}

MetricsReport MetricsReport::from_json(const nlohmann::json& j) {
    MetricsReport r;
    const auto& c = j.at("confusion");
    r.cm.tp = c.at("tp").get<long long>();
    r.cm.fp = c.at("fp").get<long long>();
    r.cm.tn = c.at("tn").get<long long>();
    r.cm.fn = c.at("fn").get<long long>();
    r.cm.positive_class = c.at("positive_class").get<int>();
    r.accuracy = j.at("accuracy").get<double>();
    r.precision = j.at("precision").get<double>();
    r.recall = j.at("recall").get<double>();
    r.error_rate = j.at("error_rate").get<double>();
    r.detection_rate = j.at("detection_rate").get<double>();
    r.false_alarm_rate = j.at("false_alarm_rate").get<double>();
    r.auc = j.at("auc").get<double>();
    r.auc_defined = j.at("auc_defined").get<bool>();
    r.flags = j.at("flags").get<std::vector<std::string>>();
    r.build_seconds = j.at("build_seconds").get<double>();
    if (j.contains("accuracy_literal")) r.accuracy_literal = j.at("accuracy_literal").get<double>();
    return r;
}

} // namespace netgauntlet
