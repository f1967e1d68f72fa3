#pragma once

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "netgauntlet/binning.hpp"
#include "netgauntlet/correlation.hpp"
#include "netgauntlet/dataset.hpp"

namespace netgauntlet {

struct SelectionConfig {
    double corr_threshold = 0.5;
    double mi_threshold = 0.001;
    BinningSpec binning;
    int jobs = 1;
};

struct RedundancyDrop {
    int feature = -1;
    int kept_feature = -1; // lowest-index kept feature with |r| over threshold
    double abs_r = 0.0;
};

struct RedundancyResult {
    std::vector<int> kept;
    std::vector<RedundancyDrop> dropped;
};

/// Greedy sweep in ascending feature index: a feature is dropped when some
/// already-kept earlier feature correlates with it above the threshold.
RedundancyResult redundancy_filter(const CorrelationMatrix& cm, double threshold);

struct MiEntry {
    int feature = -1;
    double mi = 0.0;
};

struct RelevanceResult {
    std::vector<int> kept;
    std::vector<MiEntry> dropped;
    std::vector<MiEntry> all; // MI with the label for every candidate
};

/// Keeps a candidate iff its MI with the class label is >= threshold.
RelevanceResult relevance_filter(const DiscretizedView& view, std::span<const int> candidates,
                                 std::span<const int> labels, int n_classes, double threshold,
                                 int jobs = 1);

/// Candidates ranked by MI with the label (descending, ties by ascending
/// index); the pair is (top, candidate minimizing MI with top).
struct RankPair {
    std::vector<MiEntry> ranking;
    int top = -1;
    double top_mi = 0.0;
    int partner = -1;
    double pair_mi = 0.0;
};

RankPair mi_rank_pair(const DiscretizedView& view, std::span<const int> candidates,
                      std::span<const int> labels, int n_classes);

struct SelectionReport {
    double corr_threshold = 0.5;
    double mi_threshold = 0.001;
    BinningSpec binning;
    std::vector<std::string> feature_names;
    std::vector<RedundancyDrop> stage1_dropped;
    std::vector<int> stage1_kept;
    std::vector<MiEntry> label_mi;      // per stage-1 survivor
    std::vector<MiEntry> stage2_dropped;
    std::vector<int> kept;              // final feature set
    std::optional<RankPair> diagnostic; // rank-and-min-MI pairing over survivors

    std::vector<std::string> kept_names() const;

    nlohmann::json to_json() const;
    static SelectionReport from_json(const nlohmann::json& j);
    void print_table(std::ostream& out) const;
};

/// Full two-stage filter: correlation redundancy sweep over all features,
/// then MI relevance filter over the survivors. Deterministic.
SelectionReport run_selection(const Dataset& data, const SelectionConfig& config);

} // namespace netgauntlet
