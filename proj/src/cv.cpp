#include "netgauntlet/cv.hpp"

#include <chrono>
#include <sstream>

#include "netgauntlet/errors.hpp"
#include "netgauntlet/rng.hpp"

namespace netgauntlet {

namespace {

void append_csv_row(std::ostream& out, const std::string& label, const MetricsReport& m,
                    bool include_literal) {
    out << label << ',' << m.accuracy;
    if (include_literal) out << ',' << m.accuracy_literal;
    out << ',' << m.precision << ',' << m.recall << ',' << m.error_rate << ','
        << m.detection_rate << ',' << m.false_alarm_rate << ',' << m.auc << ','
        << m.build_seconds << '\n';
}

} // namespace

std::uint64_t fold_plan_fingerprint(const FoldPlan& plan) {
    std::uint64_t h = 0x6e657467ULL ^ (static_cast<std::uint64_t>(plan.k) << 32) ^ plan.seed;
    for (int a : plan.assignment) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned>(a)) + 0x9e3779b97f4a7c15ULL +
             (h << 6) + (h >> 2);
    }
    return h;
}

CvResult cross_validate(const Dataset& data, const SelectionReport* selection,
                        const TrainConfig& config, const FoldPlan& plan, bool keep_models) {
    config.validate();
    if (plan.assignment.size() != data.n_records) {
        throw ConsistencyError("fold plan was built for a different dataset size");
    }
    if (plan.k < 2) throw ConfigError("cross-validation needs k >= 2");

    const std::vector<int> features =
        selection != nullptr ? selection->kept : all_features(data);

    CvResult result;
    result.k = plan.k;
    result.plan_seed = plan.seed;
    result.plan_fingerprint = fold_plan_fingerprint(plan);
    result.n_records = data.n_records;
    result.train_config = config.to_json();
    result.features_used = features;
    result.used_selection = selection != nullptr;

    ConfusionMatrix summed;
    double auc_sum = 0.0;
    int auc_folds = 0;
    double build_sum = 0.0;

    for (int fold = 0; fold < plan.k; ++fold) {
        const std::vector<int> train = plan.train_rows(fold);
        const std::vector<int> test = plan.test_rows(fold);
        if (train.empty() || test.empty()) {
            throw ConsistencyError("fold " + std::to_string(fold) + " has an empty side");
        }

        const auto start = std::chrono::steady_clock::now();
        const auto model = train_model(data, train, features, config);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

        const Recode recode = model->make_recode(data);
        std::vector<int> predicted, truth;
        std::vector<double> scores;
        predicted.reserve(test.size());
        truth.reserve(test.size());
        scores.reserve(test.size());
        for (int r : test) {
            const Prediction p = model->predict(recode, r);
            predicted.push_back(p.cls > 0 ? 1 : 0);
            truth.push_back(data.classes[static_cast<std::size_t>(r)] > 0 ? 1 : 0);
            scores.push_back(attack_score(p));
        }

        MetricsReport report = compute_metrics(predicted, truth, scores, 1);
        report.build_seconds = elapsed.count();

        summed.tp += report.cm.tp;
        summed.fp += report.cm.fp;
        summed.tn += report.cm.tn;
        summed.fn += report.cm.fn;
        if (report.auc_defined) {
            auc_sum += report.auc;
            ++auc_folds;
        }
        build_sum += report.build_seconds;
        if (keep_models) result.fold_models.push_back(model->to_json());
        result.folds.push_back(std::move(report));
    }

    result.aggregate = metrics_from_confusion(summed);
    if (auc_folds > 0) {
        result.aggregate.auc = auc_sum / auc_folds;
        result.aggregate.auc_defined = true;
    } else {
        result.aggregate.flags.push_back("auc_undefined");
    }
    result.aggregate.build_seconds = build_sum / plan.k;
    return result;
}

nlohmann::json CvResult::to_json(bool include_literal) const {
    auto folds_json = nlohmann::json::array();
    for (const auto& fold : folds) folds_json.push_back(fold.to_json(include_literal));
    nlohmann::json j{{"k", k},
                     {"plan_seed", plan_seed},
                     {"plan_fingerprint", plan_fingerprint},
                     {"n_records", n_records},
                     {"train_config", train_config},
                     {"features_used", features_used},
                     {"used_selection", used_selection},
                     {"aggregation", "micro (summed confusion); auc averaged over folds"},
                     {"folds", std::move(folds_json)},
                     {"aggregate", aggregate.to_json(include_literal)}};
    return j;
}

std::string CvResult::to_csv(bool include_literal) const {
    std::ostringstream out;
    out.precision(17);
    out << "fold,accuracy,";
    if (include_literal) out << "accuracy_literal,";
    out << "precision,recall,error,dr,far,auc,build_seconds\n";
    for (std::size_t i = 0; i < folds.size(); ++i) {
        append_csv_row(out, std::to_string(i), folds[i], include_literal);
    }
    append_csv_row(out, "aggregate", aggregate, include_literal);
    return out.str();
}

ComparisonRow compare_runs(const CvResult& with_selection, const CvResult& without_selection) {
    if (with_selection.plan_fingerprint != without_selection.plan_fingerprint ||
        with_selection.n_records != without_selection.n_records) {
        throw ConsistencyError("comparison requires both runs to share the fold plan");
    }
    if (with_selection.train_config != without_selection.train_config) {
        throw ConsistencyError("comparison requires identical classifier configs");
    }
    ComparisonRow row;
    row.classifier = with_selection.train_config.at("kind").get<std::string>();
    row.with_selection = with_selection.aggregate;
    row.without_selection = without_selection.aggregate;
    row.accuracy_delta = with_selection.aggregate.accuracy - without_selection.aggregate.accuracy;
    return row;
}

nlohmann::json ComparisonRow::to_json(bool include_literal) const {
    return {{"classifier", classifier},
            {"with_selection", with_selection.to_json(include_literal)},
            {"without_selection", without_selection.to_json(include_literal)},
            {"accuracy_delta", accuracy_delta}};
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
    std::ostringstream out;
    out.precision(17);
    out << "classifier,accuracy_with,accuracy_without,accuracy_delta_pp,far_with,auc_with,"
           "dr_with,build_seconds_with\n";
    for (const auto& row : rows) {
        out << row.classifier << ',' << row.with_selection.accuracy * 100.0 << ','
            << row.without_selection.accuracy * 100.0 << ',' << row.accuracy_delta * 100.0 << ','
            << row.with_selection.false_alarm_rate << ',' << row.with_selection.auc << ','
            << row.with_selection.detection_rate << ',' << row.with_selection.build_seconds
            << '\n';
    }
    return out.str();
}

} // namespace netgauntlet
