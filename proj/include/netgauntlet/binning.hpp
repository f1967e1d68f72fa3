#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "netgauntlet/dataset.hpp"

namespace netgauntlet {

enum class BinStrategy { equal_width, equal_frequency };

struct BinningSpec {
    int n_bins = 10;
    BinStrategy strategy = BinStrategy::equal_width;
};

/// Fitted per-feature edges. A value v maps to the number of edges strictly
/// below it, so edges act as inclusive upper bounds and out-of-range values
/// clamp to the extreme bins. Categorical features carry no edges and pass
/// through as codes.
struct FittedBinning {
    BinningSpec spec;
    std::vector<std::vector<double>> edges;  // per feature; empty for categorical/constant
    std::vector<bool> degenerate;            // constant feature collapsed to one bin
    std::string schema_signature;

    int bin_of(double v, std::size_t feature) const;
    int n_bins_of(std::size_t feature) const {
        return static_cast<int>(edges[feature].size()) + 1;
    }
};

/// Integer-code view of every record: binned continuous features plus
/// pass-through categorical codes. codes[f][r] < cardinality[f].
struct DiscretizedView {
    std::vector<std::vector<int>> codes;
    std::vector<int> cardinality;

    std::size_t n_features() const { return codes.size(); }
    std::size_t n_records() const { return codes.empty() ? 0 : codes[0].size(); }
};

/// Fits edges on the given rows (default: all records). equal_width spans
/// [min, max]; equal_frequency uses empirical quantiles with duplicate
/// edges collapsed.
FittedBinning fit_binning(const Dataset& data, const BinningSpec& spec,
                          std::span<const int> rows = {});

DiscretizedView apply_binning(const Dataset& data, const FittedBinning& fitted);

nlohmann::json binning_spec_to_json(const BinningSpec& spec);
BinningSpec binning_spec_from_json(const nlohmann::json& j);
nlohmann::json fitted_binning_to_json(const FittedBinning& fitted);
FittedBinning fitted_binning_from_json(const nlohmann::json& j);

} // namespace netgauntlet
