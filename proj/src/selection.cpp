#include "netgauntlet/selection.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>

#include "netgauntlet/info.hpp"
#include "netgauntlet/parallel.hpp"

namespace netgauntlet {

RedundancyResult redundancy_filter(const CorrelationMatrix& cm, double threshold) {
    if (threshold <= 0.0 || threshold > 1.0) throw ConfigError("correlation threshold must be in (0,1]");
    RedundancyResult res;
    for (int j = 0; j < cm.n_features(); ++j) {
        bool dropped = false;
        for (int i : res.kept) {
            const double a = cm.abs_or_zero(i, j);
            if (a > threshold) {
                res.dropped.push_back({j, i, a});
                dropped = true;
                break;
            }
        }
        if (!dropped) res.kept.push_back(j);
    }
    return res;
}

RelevanceResult relevance_filter(const DiscretizedView& view, std::span<const int> candidates,
                                 std::span<const int> labels, int n_classes, double threshold,
                                 int jobs) {
    if (threshold < 0.0) throw ConfigError("MI threshold must be >= 0");
    RelevanceResult res;
    res.all.resize(candidates.size());
    parallel_for(candidates.size(), jobs, [&](std::size_t i) {
        res.all[i] = {candidates[i], mi_with_label(view, candidates[i], labels, n_classes)};
    });
    for (const MiEntry& e : res.all) {
        if (e.mi >= threshold) {
            res.kept.push_back(e.feature);
        } else {
            res.dropped.push_back(e);
        }
    }
    return res;
}

RankPair mi_rank_pair(const DiscretizedView& view, std::span<const int> candidates,
                      std::span<const int> labels, int n_classes) {
    if (candidates.size() < 2) throw SizeError("mi_rank_pair needs at least 2 candidates");
    RankPair rp;
    rp.ranking.reserve(candidates.size());
    for (int f : candidates) {
        rp.ranking.push_back({f, mi_with_label(view, f, labels, n_classes)});
    }
    std::stable_sort(rp.ranking.begin(), rp.ranking.end(), [](const MiEntry& a, const MiEntry& b) {
        if (a.mi != b.mi) return a.mi > b.mi;
        return a.feature < b.feature;
    });
    rp.top = rp.ranking.front().feature;
    rp.top_mi = rp.ranking.front().mi;
    rp.partner = -1;
    for (int f : candidates) {
        if (f == rp.top) continue;
        const double mi = mi_between_features(view, rp.top, f);
        if (rp.partner < 0 || mi < rp.pair_mi || (mi == rp.pair_mi && f < rp.partner)) {
            rp.partner = f;
            rp.pair_mi = mi;
        }
    }
    return rp;
}

SelectionReport run_selection(const Dataset& data, const SelectionConfig& config) {
    SelectionReport report;
    report.corr_threshold = config.corr_threshold;
    report.mi_threshold = config.mi_threshold;
    report.binning = config.binning;
    for (const auto& f : data.schema) report.feature_names.push_back(f.name);

    const Eigen::MatrixXd X = encode_numeric(data);
    const CorrelationMatrix cm = correlation_matrix(X, config.jobs);
    RedundancyResult stage1 = redundancy_filter(cm, config.corr_threshold);
    report.stage1_dropped = std::move(stage1.dropped);
    report.stage1_kept = stage1.kept;

    const FittedBinning fitted = fit_binning(data, config.binning);
    const DiscretizedView view = apply_binning(data, fitted);
    RelevanceResult stage2 = relevance_filter(view, report.stage1_kept, data.classes,
                                              data.scheme.n_classes(), config.mi_threshold,
                                              config.jobs);
    report.label_mi = stage2.all;
    report.stage2_dropped = std::move(stage2.dropped);
    report.kept = std::move(stage2.kept);

    if (report.stage1_kept.size() >= 2) {
        report.diagnostic =
            mi_rank_pair(view, report.stage1_kept, data.classes, data.scheme.n_classes());
    }
    return report;
}

std::vector<std::string> SelectionReport::kept_names() const {
    std::vector<std::string> names;
    names.reserve(kept.size());
    for (int f : kept) names.push_back(feature_names[static_cast<std::size_t>(f)]);
    return names;
}

namespace {

nlohmann::json mi_entries_json(const std::vector<MiEntry>& entries,
                               const std::vector<std::string>& names) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : entries) {
        arr.push_back({{"feature", e.feature},
                       {"name", names[static_cast<std::size_t>(e.feature)]},
                       {"mi", e.mi}});
    }
    return arr;
}

std::vector<MiEntry> mi_entries_from_json(const nlohmann::json& arr) {
    std::vector<MiEntry> entries;
    for (const auto& j : arr) entries.push_back({j.at("feature").get<int>(), j.at("mi").get<double>()});
    return entries;
}

} // namespace

nlohmann::json SelectionReport::to_json() const {
    nlohmann::json j;
    j["corr_threshold"] = corr_threshold;
    j["mi_threshold"] = mi_threshold;
    j["binning"] = {{"n_bins", binning.n_bins},
                    {"strategy", binning.strategy == BinStrategy::equal_width ? "width" : "freq"}};
    j["feature_names"] = feature_names;
    nlohmann::json s1 = nlohmann::json::array();
    for (const auto& d : stage1_dropped) {
        s1.push_back({{"feature", d.feature},
                      {"name", feature_names[static_cast<std::size_t>(d.feature)]},
                      {"kept_feature", d.kept_feature},
                      {"kept_name", feature_names[static_cast<std::size_t>(d.kept_feature)]},
                      {"abs_r", d.abs_r}});
    }
    j["stage1_dropped"] = std::move(s1);
    j["stage1_kept"] = stage1_kept;
    j["label_mi"] = mi_entries_json(label_mi, feature_names);
    j["stage2_dropped"] = mi_entries_json(stage2_dropped, feature_names);
    j["kept"] = kept;
    j["kept_names"] = kept_names();
    if (diagnostic) {
        j["diagnostic"] = {{"ranking", mi_entries_json(diagnostic->ranking, feature_names)},
                           {"top", diagnostic->top},
                           {"top_mi", diagnostic->top_mi},
                           {"partner", diagnostic->partner},
                           {"pair_mi", diagnostic->pair_mi}};
    } else {
        j["diagnostic"] = nullptr;
    }
    return j;
}

SelectionReport SelectionReport::from_json(const nlohmann::json& j) {
    SelectionReport r;
    r.corr_threshold = j.at("corr_threshold").get<double>();
    r.mi_threshold = j.at("mi_threshold").get<double>();
    r.binning.n_bins = j.at("binning").at("n_bins").get<int>();
    r.binning.strategy = j.at("binning").at("strategy").get<std::string>() == "freq"
                             ? BinStrategy::equal_frequency
                             : BinStrategy::equal_width;
    r.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    for (const auto& d : j.at("stage1_dropped")) {
        r.stage1_dropped.push_back({d.at("feature").get<int>(), d.at("kept_feature").get<int>(),
                                    d.at("abs_r").get<double>()});
    }
    r.stage1_kept = j.at("stage1_kept").get<std::vector<int>>();
    r.label_mi = mi_entries_from_json(j.at("label_mi"));
    r.stage2_dropped = mi_entries_from_json(j.at("stage2_dropped"));
    r.kept = j.at("kept").get<std::vector<int>>();
    if (!j.at("diagnostic").is_null()) {
        RankPair rp;
        rp.ranking = mi_entries_from_json(j.at("diagnostic").at("ranking"));
        rp.top = j.at("diagnostic").at("top").get<int>();
        rp.top_mi = j.at("diagnostic").at("top_mi").get<double>();
        rp.partner = j.at("diagnostic").at("partner").get<int>();
        rp.pair_mi = j.at("diagnostic").at("pair_mi").get<double>();
        r.diagnostic = std::move(rp);
    }
    return r;
}

void SelectionReport::print_table(std::ostream& out) const {
    const std::size_t total = feature_names.size();
    out << "feature funnel: " << total << " -> " << stage1_kept.size() << " -> " << kept.size()
        << "\n";
    out << "stage 1 (|r| > " << corr_threshold << "): dropped " << stage1_dropped.size() << "\n";
    for (const auto& d : stage1_dropped) {
        out << "  - " << feature_names[static_cast<std::size_t>(d.feature)] << "  (|r|="
            << std::fixed << std::setprecision(3) << d.abs_r << " with "
            << feature_names[static_cast<std::size_t>(d.kept_feature)] << ")\n";
    }
    out << "stage 2 (MI < " << std::defaultfloat << mi_threshold << "): dropped "
        << stage2_dropped.size() << "\n";
    for (const auto& e : stage2_dropped) {
        out << "  - " << feature_names[static_cast<std::size_t>(e.feature)] << "  (MI="
            << std::fixed << std::setprecision(6) << e.mi << ")\n";
    }
    out << "kept " << kept.size() << ":";
    for (int f : kept) out << ' ' << feature_names[static_cast<std::size_t>(f)];
    out << "\n";
    if (diagnostic) {
        out << "diagnostic pairing: top=" << feature_names[static_cast<std::size_t>(diagnostic->top)]
            << " (MI with label " << std::setprecision(6) << diagnostic->top_mi << "), min-MI partner="
            << feature_names[static_cast<std::size_t>(diagnostic->partner)] << " (pair MI "
            << diagnostic->pair_mi << ")\n";
    }
    out << std::defaultfloat;
}

} // namespace netgauntlet
