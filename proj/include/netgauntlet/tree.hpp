#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "netgauntlet/binning.hpp"
#include "netgauntlet/classifier.hpp"
#include "netgauntlet/dataset.hpp"
#include "netgauntlet/rng.hpp"

namespace netgauntlet {

/// Gini impurity of a class-count vector: 1 - sum((c_i / n)^2).
double gini(const Eigen::VectorXd& counts);

/// Information gain of a partition, in bits: H(parent) - sum(w_i * H(child_i)).
/// Children counts must sum to the parent counts (ConsistencyError otherwise).
double info_gain(const Eigen::VectorXd& parent, const std::vector<Eigen::VectorXd>& children);

struct TreeNode {
    enum class Type { leaf, numeric, one_vs_rest, multiway };

    Type type = Type::leaf;
    int feature = -1;     // schema feature index
    double threshold = 0; // numeric: value <= threshold goes to children[0]
    int match_code = -1;  // one_vs_rest: code == match_code goes to children[0]
    std::vector<int> child_codes; // multiway, ascending; parallel to children
    int default_child = 0;        // multiway: route for codes unseen in training
    std::vector<std::unique_ptr<TreeNode>> children;

    int predicted = 0; // leaf payload
    Eigen::VectorXd counts;
    Eigen::VectorXd probs;

    bool is_leaf() const { return type == Type::leaf; }
    int depth() const;
    int n_leaves() const;
};

std::unique_ptr<TreeNode> make_leaf(Eigen::VectorXd counts);

/// Walks the tree for one record. `codes(feature)` must yield the training-space
/// code for categorical (or binned) features; `value(feature)` the raw numeric.
template <typename CodeFn, typename ValueFn>
const TreeNode& descend(const TreeNode& root, CodeFn&& codes, ValueFn&& value) {
    const TreeNode* node = &root;
    while (!node->is_leaf()) {
        switch (node->type) {
        case TreeNode::Type::numeric:
            node = node->children[value(node->feature) <= node->threshold ? 0 : 1].get();
            break;
        case TreeNode::Type::one_vs_rest:
            node = node->children[codes(node->feature) == node->match_code ? 0 : 1].get();
            break;
        default: {
            const int c = codes(node->feature);
            const auto it = std::lower_bound(node->child_codes.begin(), node->child_codes.end(), c);
            const bool hit = it != node->child_codes.end() && *it == c;
            node = node->children[hit ? static_cast<std::size_t>(it - node->child_codes.begin())
                                      : static_cast<std::size_t>(node->default_child)]
                       .get();
            break;
        }
        }
    }
    return *node;
}

/// Multiway entropy tree over a discretized view of the data; each feature is
/// used at most once per root-to-leaf path.
class Id3Model final : public Model {
public:
    ClassifierKind kind() const override { return ClassifierKind::id3; }
    Prediction predict(const Recode& recode, int row) const override;

    const FittedBinning& binning() const { return binning_; }
    const TreeNode& root() const { return *root_; }

protected:
    nlohmann::json params_json() const override;

private:
    friend Id3Model train_id3(const Dataset&, std::span<const int>, std::span<const int>,
                              const TrainConfig&);
    friend std::unique_ptr<Model> model_from_json(const nlohmann::json&);

    FittedBinning binning_;
    std::unique_ptr<TreeNode> root_;
};

/// Binary Gini tree: midpoint thresholds on numeric features, one-vs-rest
/// partitions on categorical ones. Features may repeat along a path.
class CartModel final : public Model {
public:
    ClassifierKind kind() const override { return ClassifierKind::cart; }
    Prediction predict(const Recode& recode, int row) const override;

    const TreeNode& root() const { return *root_; }

protected:
    nlohmann::json params_json() const override;

private:
    friend CartModel train_cart(const Dataset&, std::span<const int>, std::span<const int>,
                                const TrainConfig&);
    friend class ForestModel;
    friend std::unique_ptr<Model> model_from_json(const nlohmann::json&);

    std::unique_ptr<TreeNode> root_;
};

Id3Model train_id3(const Dataset& data, std::span<const int> rows, std::span<const int> features,
                   const TrainConfig& config);

CartModel train_cart(const Dataset& data, std::span<const int> rows, std::span<const int> features,
                     const TrainConfig& config);

/// Core CART builder, shared with the forest. When `rng` is given, each split
/// considers a random draw of `mtry` candidate features instead of all.
std::unique_ptr<TreeNode> build_cart_tree(const Dataset& data, std::span<const int> rows,
                                          std::span<const int> features, int n_classes,
                                          const TrainConfig& config, Rng* rng = nullptr,
                                          int mtry = 0);

nlohmann::json tree_to_json(const TreeNode& node);
std::unique_ptr<TreeNode> tree_from_json(const nlohmann::json& j);

} // namespace netgauntlet
