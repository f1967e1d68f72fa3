#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>

#include "helpers.hpp"
#include "netgauntlet/binning.hpp"
#include "netgauntlet/errors.hpp"
#include "netgauntlet/info.hpp"
#include "netgauntlet/rng.hpp"
#include "oracles.hpp"

using namespace netgauntlet;

namespace {

Eigen::VectorXd counts(std::initializer_list<double> v) {
    Eigen::VectorXd c(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) c(i++) = x;
    return c;
}

DiscreteDistribution table(std::initializer_list<std::initializer_list<double>> rows) {
    DiscreteDistribution d;
    d.joint.resize(static_cast<Eigen::Index>(rows.size()),
                   static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (double v : row) d.joint(i, j++) = v;
        ++i;
    }
    return d;
}

} // namespace

TEST_CASE("entropy oracle values") {
    CHECK(entropy(counts({3, 1})) == doctest::Approx(oracles::kEntropy31).epsilon(1e-12));
    CHECK(entropy(counts({1, 1, 1, 1})) == doctest::Approx(oracles::kEntropyUniform4));
    CHECK(entropy(counts({5})) == 0.0);
    CHECK(entropy(counts({0, 7, 0})) == 0.0); // zero cells contribute nothing
    CHECK_THROWS_AS(entropy(Eigen::VectorXd()), SizeError);
}

TEST_CASE("mutual information oracle and dual formulation") {
    DiscreteDistribution d = table({{4, 1}, {1, 4}});
    CHECK(mutual_information(d) == doctest::Approx(oracles::kMiDiag41).epsilon(1e-12));
    CHECK(mutual_information_entropy_route(d) ==
          doctest::Approx(oracles::kMiDiag41).epsilon(1e-9));

    // independent joint -> zero information
    DiscreteDistribution ind = table({{9, 3}, {3, 1}});
    CHECK(mutual_information(ind) == doctest::Approx(0.0).epsilon(1e-12));

    // identical variables -> I(X;X) = H(X)
    DiscreteDistribution diag = table({{3, 0}, {0, 1}});
    CHECK(mutual_information(diag) == doctest::Approx(oracles::kEntropy31).epsilon(1e-12));
}

TEST_CASE("mutual information properties over random tables") {
    Rng rng(12345);
    for (int trial = 0; trial < 300; ++trial) {
        int nx = 2 + static_cast<int>(rng.next_below(4));
        int ny = 2 + static_cast<int>(rng.next_below(4));
        DiscreteDistribution d;
        d.joint.resize(nx, ny);
        for (int i = 0; i < nx; ++i) {
            for (int j = 0; j < ny; ++j) {
                d.joint(i, j) = static_cast<double>(rng.next_below(20));
            }
        }
        if (d.total() <= 0) d.joint(0, 0) = 1;

        double mi = mutual_information(d);
        double dual = mutual_information_entropy_route(d);
        double hx = entropy(d.margin_x());
        double hy = entropy(d.margin_y());

        CHECK(mi >= 0.0);
        CHECK(std::abs(mi - dual) <= 1e-9);
        CHECK(mi <= std::min(hx, hy) + 1e-9);
        // symmetry
        CHECK(std::abs(mutual_information(d.transposed()) - mi) <= 1e-12);
    }
}

TEST_CASE("tabulation and error paths") {
    std::vector<int> x = {0, 0, 1, 1};
    std::vector<int> y = {0, 1, 0, 1};
    DiscreteDistribution d = DiscreteDistribution::from_codes(x, y, 2, 2);
    CHECK(d.joint.sum() == 4.0);
    CHECK(d.joint(0, 1) == 1.0);

    std::vector<int> shorter = {0};
    CHECK_THROWS_AS(DiscreteDistribution::from_codes(x, shorter, 2, 2), ShapeError);
    CHECK_THROWS_AS(mutual_information(table({{0, 0}, {0, 0}})), SizeError);

    DiscreteDistribution neg = table({{1, -1}, {0, 2}});
    CHECK_THROWS_AS(neg.check_invariants(), ConsistencyError);
}

TEST_CASE("mi_with_label and mi_between_features on a crafted view") {
    // feature 0 equals the label, feature 1 is constant, feature 2 is noise
    std::vector<FeatureMeta> schema = testutil::numeric_schema(3);
    Dataset d = testutil::csv_dataset(
        "0,5,1,normal\n"
        "0,5,9,normal\n"
        "1,5,1,smurf\n"
        "1,5,9,smurf\n",
        schema, LabelScheme::binary());
    FittedBinning fb = fit_binning(d, {2, BinStrategy::equal_width});
    DiscretizedView view = apply_binning(d, fb);

    double mi0 = mi_with_label(view, 0, d.classes, 2);
    double mi1 = mi_with_label(view, 1, d.classes, 2);
    double mi2 = mi_with_label(view, 2, d.classes, 2);
    CHECK(mi0 == doctest::Approx(1.0).epsilon(1e-12)); // perfect binary predictor
    CHECK(mi1 == doctest::Approx(0.0));                // constant
    CHECK(mi2 == doctest::Approx(0.0).epsilon(1e-12)); // independent noise

    CHECK(mi_between_features(view, 0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mi_between_features(view, 0, 2) == doctest::Approx(0.0).epsilon(1e-12));
}
