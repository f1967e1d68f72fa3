#include <doctest.h>

#include "helpers.hpp"
#include "netgauntlet/binning.hpp"
#include "netgauntlet/errors.hpp"

using namespace netgauntlet;

namespace {

Dataset one_feature(const std::vector<double>& values) {
    std::string text;
    for (double v : values) {
        std::ostringstream cell;
        cell << std::setprecision(17) << v;
        text += cell.str() + ",normal\n";
    }
    return testutil::csv_dataset(text, testutil::numeric_schema(1), LabelScheme::binary());
}

} // namespace

TEST_CASE("equal-width edges and bin_of semantics") {
    Dataset d = one_feature({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    FittedBinning fb = fit_binning(d, {2, BinStrategy::equal_width});
    REQUIRE(fb.edges[0].size() == 1);
    CHECK(fb.edges[0][0] == doctest::Approx(5.0));

    // edges are inclusive upper bounds
    CHECK(fb.bin_of(5.0, 0) == 0);
    CHECK(fb.bin_of(5.0001, 0) == 1);
    // out-of-range clamps to the extreme bins
    CHECK(fb.bin_of(-100.0, 0) == 0);
    CHECK(fb.bin_of(100.0, 0) == 1);
    CHECK(fb.n_bins_of(0) == 2);
}

TEST_CASE("equal-frequency edges collapse duplicates") {
    Dataset d = one_feature({1, 1, 1, 1, 1, 1, 2, 3});
    FittedBinning fb = fit_binning(d, {4, BinStrategy::equal_frequency});
    // quantile edges all land on the repeated value; duplicates collapse
    for (std::size_t i = 1; i < fb.edges[0].size(); ++i) {
        CHECK(fb.edges[0][i] > fb.edges[0][i - 1]);
    }
    CHECK(fb.n_bins_of(0) >= 2);
}

TEST_CASE("constant features are degenerate single bins") {
    Dataset d = one_feature({7, 7, 7, 7});
    FittedBinning fb = fit_binning(d, {10, BinStrategy::equal_width});
    CHECK(fb.degenerate[0]);
    CHECK(fb.edges[0].empty());
    CHECK(fb.n_bins_of(0) == 1);
    CHECK(fb.bin_of(7, 0) == 0);
    CHECK(fb.bin_of(123, 0) == 0);
}

TEST_CASE("fitting on a row subset ignores other rows") {
    Dataset d = one_feature({0, 100, 1, 2, 3});
    std::vector<int> rows = {0, 2, 3, 4}; // excludes the 100 outlier
    FittedBinning fb = fit_binning(d, {3, BinStrategy::equal_width}, rows);
    CHECK(fb.edges[0].back() <= 3.0);
    CHECK(fb.bin_of(100.0, 0) == fb.n_bins_of(0) - 1);
}

TEST_CASE("discretized view passes categorical codes through") {
    std::vector<FeatureMeta> schema = {{"x", FeatureKind::continuous, 0},
                                       {"c", FeatureKind::categorical, 1}};
    Dataset d = testutil::csv_dataset(
        "0,tcp,normal\n5,udp,normal\n10,icmp,smurf\n", schema, LabelScheme::binary());
    FittedBinning fb = fit_binning(d, {2, BinStrategy::equal_width});
    DiscretizedView view = apply_binning(d, fb);
    REQUIRE(view.n_features() == 2);
    CHECK(view.n_records() == 3);
    CHECK(view.codes[1] == std::vector<int>{0, 1, 2});
    CHECK(view.cardinality[1] == 3);
    for (std::size_t f = 0; f < view.n_features(); ++f) {
        for (int code : view.codes[f]) {
            CHECK(code >= 0);
            CHECK(code < view.cardinality[f]);
        }
    }
}

TEST_CASE("binning config validation and JSON round trip") {
    Dataset d = one_feature({1, 2, 3});
    CHECK_THROWS_AS(fit_binning(d, {1, BinStrategy::equal_width}), ConfigError);

    FittedBinning fb = fit_binning(d, {3, BinStrategy::equal_frequency});
    FittedBinning back = fitted_binning_from_json(fitted_binning_to_json(fb));
    CHECK(back.spec.n_bins == fb.spec.n_bins);
    CHECK(back.spec.strategy == fb.spec.strategy);
    CHECK(back.edges == fb.edges);
    CHECK(back.schema_signature == fb.schema_signature);
    CHECK(fitted_binning_to_json(back).dump() == fitted_binning_to_json(fb).dump());

    CHECK_THROWS_AS(binning_spec_from_json(nlohmann::json{{"n_bins", 5}, {"strategy", "magic"}}),
                    ConfigError);
}
