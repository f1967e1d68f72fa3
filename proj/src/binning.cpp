#include "netgauntlet/binning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace netgauntlet {

int FittedBinning::bin_of(double v, std::size_t feature) const {
    const auto& e = edges[feature];
    // count of edges strictly below v
    return static_cast<int>(std::lower_bound(e.begin(), e.end(), v) - e.begin());
}

FittedBinning fit_binning(const Dataset& data, const BinningSpec& spec, std::span<const int> rows) {
    if (spec.n_bins < 2) throw ConfigError("n_bins must be >= 2");
    std::vector<int> all;
    if (rows.empty()) {
        all.resize(data.n_records);
        std::iota(all.begin(), all.end(), 0);
        rows = all;
    }
    if (rows.empty()) throw EmptyInputError("cannot fit binning on zero rows");

    FittedBinning fit;
    fit.spec = spec;
    fit.schema_signature = data.schema_signature();
    fit.edges.resize(data.n_features());
    fit.degenerate.assign(data.n_features(), false);

    for (std::size_t f = 0; f < data.n_features(); ++f) {
        if (data.kind(f) == FeatureKind::categorical) continue;
        const auto& col = data.columns[f].values;
        std::vector<double> vals;
        vals.reserve(rows.size());
        for (int r : rows) vals.push_back(col[static_cast<std::size_t>(r)]);

        std::vector<double>& edges = fit.edges[f];
        if (spec.strategy == BinStrategy::equal_width) {
            const auto [mn_it, mx_it] = std::minmax_element(vals.begin(), vals.end());
            const double mn = *mn_it, mx = *mx_it;
            if (mx > mn) {
                const double w = (mx - mn) / spec.n_bins;
                for (int i = 1; i < spec.n_bins; ++i) edges.push_back(mn + w * i);
            }
        } else {
            std::sort(vals.begin(), vals.end());
            const std::size_t n = vals.size();
            for (int i = 1; i < spec.n_bins; ++i) {
                // type-1 empirical quantile at i/n_bins
                const std::size_t idx = static_cast<std::size_t>(std::ceil(
                                            static_cast<double>(i) * static_cast<double>(n) /
                                            spec.n_bins)) - 1;
                edges.push_back(vals[std::min(idx, n - 1)]);
            }
            edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
            // an edge at the maximum creates an empty top bin; drop it
            if (!edges.empty() && edges.back() >= vals.back()) edges.pop_back();
        }
        if (edges.empty()) fit.degenerate[f] = true;
    }
    return fit;
}

DiscretizedView apply_binning(const Dataset& data, const FittedBinning& fitted) {
    if (fitted.schema_signature != data.schema_signature()) {
        throw SchemaError("binning was fitted on a different schema");
    }
    DiscretizedView view;
    view.codes.resize(data.n_features());
    view.cardinality.resize(data.n_features());
    for (std::size_t f = 0; f < data.n_features(); ++f) {
        auto& out = view.codes[f];
        out.resize(data.n_records);
        if (data.kind(f) == FeatureKind::categorical) {
            const auto& codes = data.columns[f].codes;
            for (std::size_t r = 0; r < data.n_records; ++r) out[r] = codes[r];
            view.cardinality[f] = static_cast<int>(data.columns[f].categories.size());
        } else {
            const auto& vals = data.columns[f].values;
            for (std::size_t r = 0; r < data.n_records; ++r) out[r] = fitted.bin_of(vals[r], f);
            view.cardinality[f] = fitted.n_bins_of(f);
        }
    }
    return view;
}

nlohmann::json binning_spec_to_json(const BinningSpec& spec) {
    return {{"n_bins", spec.n_bins},
            {"strategy", spec.strategy == BinStrategy::equal_width ? "width" : "freq"}};
}

BinningSpec binning_spec_from_json(const nlohmann::json& j) {
    BinningSpec spec;
    spec.n_bins = j.at("n_bins").get<int>();
    const auto s = j.at("strategy").get<std::string>();
    if (s != "width" && s != "freq") throw ConfigError("unknown bin strategy: " + s);
    spec.strategy = s == "freq" ? BinStrategy::equal_frequency : BinStrategy::equal_width;
    return spec;
}

nlohmann::json fitted_binning_to_json(const FittedBinning& fitted) {
    nlohmann::json j;
    j["spec"] = binning_spec_to_json(fitted.spec);
    j["edges"] = fitted.edges;
    j["degenerate"] = std::vector<int>(fitted.degenerate.begin(), fitted.degenerate.end());
    j["schema_signature"] = fitted.schema_signature;
    return j;
}

FittedBinning fitted_binning_from_json(const nlohmann::json& j) {
    FittedBinning fitted;
    fitted.spec = binning_spec_from_json(j.at("spec"));
    fitted.edges = j.at("edges").get<std::vector<std::vector<double>>>();
    for (int d : j.at("degenerate").get<std::vector<int>>()) fitted.degenerate.push_back(d != 0);
    fitted.schema_signature = j.at("schema_signature").get<std::string>();
    return fitted;
}

} // namespace netgauntlet
