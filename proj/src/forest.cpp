#include "netgauntlet/forest.hpp"

#include <cmath>

#include "netgauntlet/errors.hpp"
#include "netgauntlet/parallel.hpp"
#include "netgauntlet/rng.hpp"

namespace netgauntlet {

namespace {

std::vector<int> draw_bag(std::span<const int> rows, Rng& rng) {
    std::vector<int> bag;
    bag.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        bag.push_back(rows[static_cast<std::size_t>(rng.next_below(rows.size()))]);
    }
    return bag;
}

} // namespace

int default_mtry(std::size_t n_features) {
    const auto m = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n_features))));
    return std::max(1, m);
}

std::vector<int> bootstrap_rows(std::span<const int> rows, std::uint64_t tree_seed) {
    if (rows.empty()) throw EmptyInputError("cannot bootstrap zero rows");
    Rng rng(tree_seed);
    return draw_bag(rows, rng);
}

ForestModel train_forest(const Dataset& data, std::span<const int> rows,
                         std::span<const int> features, const TrainConfig& config) {
    config.validate();
    if (rows.empty()) throw EmptyInputError("cannot train on zero rows");
    if (features.empty()) throw ConfigError("cannot train with an empty feature set");

    ForestModel model;
    model.init_common(data, features, config);
    model.bootstrap_ = config.bootstrap;
    model.mtry_ = config.n_features_per_split > 0
                      ? std::min(config.n_features_per_split, static_cast<int>(features.size()))
                      : default_mtry(features.size());

    const auto n_trees = static_cast<std::size_t>(config.n_trees);
    model.trees_.resize(n_trees);
    model.tree_seeds_.resize(n_trees);
    for (std::size_t t = 0; t < n_trees; ++t) {
        model.tree_seeds_[t] = derive_seed(config.seed, SeedRole::forest_tree, t);
    }

    const int n_classes = model.n_classes();
    parallel_for(n_trees, config.jobs, [&](std::size_t t) {
        Rng rng(model.tree_seeds_[t]);
        std::vector<int> bag;
        if (config.bootstrap) {
            bag = draw_bag(rows, rng);
        } else {
            bag.assign(rows.begin(), rows.end());
        }
        model.trees_[t] = build_cart_tree(data, bag, features, n_classes, config, &rng,
                                          model.mtry_);
    });
    return model;
}

Prediction ForestModel::predict(const Recode& recode, int row) const {
    const Dataset& data = *recode.data;
    const auto ur = static_cast<std::size_t>(row);
    Eigen::VectorXd votes = Eigen::VectorXd::Zero(n_classes());
    for (const auto& tree : trees_) {
        const TreeNode& leaf = descend(
            *tree, [&](int f) { return recode.code(static_cast<std::size_t>(f), ur); },
            [&](int f) { return data.value(static_cast<std::size_t>(f), ur); });
        votes(leaf.predicted) += 1.0;
    }
    int best = 0;
    for (Eigen::Index c = 1; c < votes.size(); ++c) {
        if (votes(c) > votes(best)) best = static_cast<int>(c);
    }
    return {best, votes / static_cast<double>(trees_.size())};
}

nlohmann::json ForestModel::params_json() const {
    auto trees = nlohmann::json::array();
    for (const auto& tree : trees_) trees.push_back(tree_to_json(*tree));
    return {{"trees", std::move(trees)},
            {"tree_seeds", tree_seeds_},
            {"mtry", mtry_},
            {"bootstrap", bootstrap_}};
}

} // namespace netgauntlet
