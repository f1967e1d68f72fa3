#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "netgauntlet/errors.hpp"
#include "netgauntlet/metrics.hpp"
#include "netgauntlet/rng.hpp"
#include "oracles.hpp"

using namespace netgauntlet;

TEST_CASE("confusion counts the four cells") {
    std::vector<int> pred = {1, 1, 0, 0, 1, 0};
    std::vector<int> truth = {1, 0, 0, 1, 1, 0};
    ConfusionMatrix cm = confusion(pred, truth, 1);
    CHECK(cm.tp == 2);
    CHECK(cm.fp == 1);
    CHECK(cm.tn == 2);
    CHECK(cm.fn == 1);
    CHECK(cm.total() == 6);

    // any class index can play the positive role
    ConfusionMatrix flipped = confusion(pred, truth, 0);
    CHECK(flipped.tp == 2);
    CHECK(flipped.fp == 1);
    CHECK(flipped.tn == 2);
    CHECK(flipped.fn == 1);

    CHECK_THROWS_AS(confusion(std::vector<int>{1}, truth, 1), ShapeError);
    CHECK_THROWS_AS(confusion(std::vector<int>{}, std::vector<int>{}, 1), SizeError);
}

TEST_CASE("ratio identities hold exactly on randomized label sets") {
    Rng rng(404);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 20 + static_cast<int>(rng.next_below(200));
        std::vector<int> pred(static_cast<std::size_t>(n)), truth(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            pred[static_cast<std::size_t>(i)] = static_cast<int>(rng.next_below(2));
            truth[static_cast<std::size_t>(i)] = static_cast<int>(rng.next_below(2));
        }
        long long tp = 0, fp = 0, tn = 0, fn = 0;
        for (int i = 0; i < n; ++i) {
            const bool p = pred[static_cast<std::size_t>(i)] == 1;
            const bool t = truth[static_cast<std::size_t>(i)] == 1;
            tp += p && t;
            fp += p && !t;
            tn += !p && !t;
            fn += !p && t;
        }
        ConfusionMatrix cm = confusion(pred, truth, 1);
        CHECK(cm.tp == tp);
        CHECK(cm.fp == fp);
        CHECK(cm.tn == tn);
        CHECK(cm.fn == fn);

        CHECK(accuracy(cm) == static_cast<double>(tp + tn) / n);
        CHECK(accuracy_literal(cm) == static_cast<double>(tp) / n);
        CHECK(error_rate(cm) == 1.0 - accuracy(cm));
        if (tp + fp > 0) CHECK(precision(cm) == static_cast<double>(tp) / (tp + fp));
        if (tp + fn > 0) CHECK(recall(cm) == static_cast<double>(tp) / (tp + fn));
        CHECK(detection_rate(cm) == recall(cm));
        if (fp + tn > 0) CHECK(false_alarm_rate(cm) == static_cast<double>(fp) / (fp + tn));
    }
}

TEST_CASE("undefined ratios report zero and are flagged") {
    // all-negative predictions and truth: TP+FP = 0 and TP+FN = 0
    std::vector<int> pred = {0, 0, 0};
    std::vector<int> truth = {0, 0, 0};
    MetricsReport r = compute_metrics(pred, truth, std::vector<double>{0.1, 0.2, 0.3}, 1);
    CHECK(r.precision == 0.0);
    CHECK(r.recall == 0.0);
    CHECK(r.accuracy == 1.0);
    CHECK_FALSE(r.auc_defined);
    CHECK(std::find(r.flags.begin(), r.flags.end(), "precision_undefined") != r.flags.end());
    CHECK(std::find(r.flags.begin(), r.flags.end(), "recall_undefined") != r.flags.end());
    CHECK(std::find(r.flags.begin(), r.flags.end(), "auc_undefined") != r.flags.end());

    // all-positive truth: FP+TN = 0
    std::vector<int> pos = {1, 1};
    MetricsReport r2 = compute_metrics(pos, pos, std::vector<double>{0.9, 0.8}, 1);
    CHECK(r2.false_alarm_rate == 0.0);
    CHECK(std::find(r2.flags.begin(), r2.flags.end(), "false_alarm_rate_undefined") !=
          r2.flags.end());
}

TEST_CASE("AUC fixture, boundary cases and tie handling") {
    // hand-counted pairwise value over 2 positives x 2 negatives
    std::vector<double> scores = {0.9, 0.8, 0.3, 0.2};
    std::vector<int> truth = {1, 0, 1, 0};
    auto a = auc(scores, truth, 1);
    REQUIRE(a.has_value());
    CHECK(*a == doctest::Approx(oracles::kAucFixture).epsilon(1e-12));

    // a tie between a positive and a negative counts half
    std::vector<double> tie_scores = {0.8, 0.4, 0.4, 0.1};
    std::vector<int> tie_truth = {1, 1, 0, 0};
    CHECK(*auc(tie_scores, tie_truth, 1) == doctest::Approx(0.875).epsilon(1e-12));

    std::vector<double> perfect = {0.9, 0.2, 0.8, 0.1};
    CHECK(*auc(perfect, truth, 1) == doctest::Approx(1.0));
    std::vector<double> inverted = {0.1, 0.9, 0.2, 0.8};
    CHECK(*auc(inverted, truth, 1) == doctest::Approx(0.0));
    std::vector<double> tied = {0.5, 0.5, 0.5, 0.5};
    CHECK(*auc(tied, truth, 1) == doctest::Approx(0.5));

    std::vector<int> one_class = {1, 1, 1, 1};
    CHECK_FALSE(auc(scores, one_class, 1).has_value());

    CHECK_THROWS_AS(auc(std::vector<double>{0.5}, truth, 1), ShapeError);
}

TEST_CASE("AUC is invariant under monotone score transforms") {
    Rng rng(55);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 10 + static_cast<int>(rng.next_below(60));
        std::vector<double> scores(static_cast<std::size_t>(n));
        std::vector<int> truth(static_cast<std::size_t>(n));
        bool both = false;
        for (int i = 0; i < n; ++i) {
            // coarse grid forces plenty of exact ties
            scores[static_cast<std::size_t>(i)] = static_cast<double>(rng.next_below(8)) / 8.0;
            truth[static_cast<std::size_t>(i)] = static_cast<int>(rng.next_below(2));
        }
        both = std::count(truth.begin(), truth.end(), 1) > 0 &&
               std::count(truth.begin(), truth.end(), 0) > 0;
        if (!both) continue;

        auto base = auc(scores, truth, 1);
        REQUIRE(base.has_value());

        std::vector<double> affine(scores.size()), cubed(scores.size());
        for (std::size_t i = 0; i < scores.size(); ++i) {
            affine[i] = 2.0 * scores[i] + 1.0;
            cubed[i] = scores[i] * scores[i] * scores[i];
        }
        // rank-preserving maps cannot change a rank statistic at all
        CHECK(*auc(affine, truth, 1) == *base);
        CHECK(*auc(cubed, truth, 1) == *base);
    }
}

TEST_CASE("AUC equals the brute-force pairwise count") {
    Rng rng(606);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 5 + static_cast<int>(rng.next_below(40));
        std::vector<double> scores(static_cast<std::size_t>(n));
        std::vector<int> truth(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            scores[static_cast<std::size_t>(i)] = static_cast<double>(rng.next_below(6));
            truth[static_cast<std::size_t>(i)] = static_cast<int>(rng.next_below(2));
        }
        double wins = 0;
        long long pairs = 0;
        for (int i = 0; i < n; ++i) {
            if (truth[static_cast<std::size_t>(i)] != 1) continue;
            for (int j = 0; j < n; ++j) {
                if (truth[static_cast<std::size_t>(j)] != 0) continue;
                ++pairs;
                const double si = scores[static_cast<std::size_t>(i)];
                const double sj = scores[static_cast<std::size_t>(j)];
                wins += si > sj ? 1.0 : (si == sj ? 0.5 : 0.0);
            }
        }
        auto a = auc(scores, truth, 1);
        if (pairs == 0) {
            CHECK_FALSE(a.has_value());
        } else {
            REQUIRE(a.has_value());
            CHECK(*a == doctest::Approx(wins / static_cast<double>(pairs)).epsilon(1e-12));
        }
    }
}

TEST_CASE("metrics report serializes round-trip") {
    std::vector<int> pred = {1, 0, 1, 1, 0, 0, 1, 0};
    std::vector<int> truth = {1, 0, 0, 1, 1, 0, 1, 0};
    std::vector<double> scores = {0.9, 0.2, 0.7, 0.8, 0.4, 0.1, 0.95, 0.3};
    MetricsReport r = compute_metrics(pred, truth, scores, 1);
    r.build_seconds = 1.25;

    MetricsReport back = MetricsReport::from_json(r.to_json(true));
    CHECK(back.cm.tp == r.cm.tp);
    CHECK(back.cm.fp == r.cm.fp);
    CHECK(back.cm.tn == r.cm.tn);
    CHECK(back.cm.fn == r.cm.fn);
    CHECK(back.accuracy == r.accuracy);
    CHECK(back.accuracy_literal == r.accuracy_literal);
    CHECK(back.precision == r.precision);
    CHECK(back.recall == r.recall);
    CHECK(back.error_rate == r.error_rate);
    CHECK(back.detection_rate == r.detection_rate);
    CHECK(back.false_alarm_rate == r.false_alarm_rate);
    CHECK(back.auc == r.auc);
    CHECK(back.auc_defined == r.auc_defined);
    CHECK(back.build_seconds == r.build_seconds);
}

TEST_CASE("micro-average from a summed confusion matrix") {
    ConfusionMatrix total;
    total.tp = 180;
    total.fp = 3;
    total.tn = 95;
    total.fn = 2;
    MetricsReport r = metrics_from_confusion(total);
    CHECK(r.accuracy == doctest::Approx((180.0 + 95.0) / 280.0).epsilon(1e-15));
    CHECK(r.precision == doctest::Approx(180.0 / 183.0).epsilon(1e-15));
    CHECK(r.recall == doctest::Approx(180.0 / 182.0).epsilon(1e-15));
    CHECK(r.false_alarm_rate == doctest::Approx(3.0 / 98.0).epsilon(1e-15));
    CHECK_FALSE(r.auc_defined);
}
