#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "netgauntlet/classifier.hpp"
#include "netgauntlet/tree.hpp"

namespace netgauntlet {

/// Bagged CART ensemble. Tree t trains on a bootstrap of the training rows
/// drawn from derive_seed(seed, forest_tree, t); the per-tree seeds are kept
/// on the model so any tree's bag can be reconstructed after the fact.
class ForestModel final : public Model {
public:
    ClassifierKind kind() const override { return ClassifierKind::random_forest; }
    Prediction predict(const Recode& recode, int row) const override;

    int n_trees() const { return static_cast<int>(trees_.size()); }
    int mtry() const { return mtry_; }
    bool bootstrap() const { return bootstrap_; }
    std::uint64_t tree_seed(int t) const { return tree_seeds_[static_cast<std::size_t>(t)]; }
    const TreeNode& tree(int t) const { return *trees_[static_cast<std::size_t>(t)]; }

protected:
    nlohmann::json params_json() const override;

private:
    friend ForestModel train_forest(const Dataset&, std::span<const int>, std::span<const int>,
                                    const TrainConfig&);
    friend std::unique_ptr<Model> model_from_json(const nlohmann::json&);

    std::vector<std::unique_ptr<TreeNode>> trees_;
    std::vector<std::uint64_t> tree_seeds_;
    int mtry_ = 0;
    bool bootstrap_ = true;
};

ForestModel train_forest(const Dataset& data, std::span<const int> rows,
                         std::span<const int> features, const TrainConfig& config);

/// The exact bag tree `tree_seed` trained on: rows.size() draws with
/// replacement, in draw order. Rows absent from the result are that tree's
/// out-of-bag rows.
std::vector<int> bootstrap_rows(std::span<const int> rows, std::uint64_t tree_seed);

/// floor(sqrt(n_features)), the default number of candidates per split.
int default_mtry(std::size_t n_features);

} // namespace netgauntlet
