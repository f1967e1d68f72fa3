#include "netgauntlet/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "netgauntlet/errors.hpp"
#include "netgauntlet/info.hpp"

namespace netgauntlet {

namespace {

// A candidate split replaces the incumbent only when its score improves by
// more than this margin; ties therefore resolve to the candidate enumerated
// first (ascending feature index, then ascending threshold / code).
constexpr double kSplitTolerance = 1e-12;

Eigen::VectorXd class_counts(const Dataset& data, std::span<const int> rows, int n_classes) {
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(n_classes);
    for (int r : rows) counts(data.classes[static_cast<std::size_t>(r)]) += 1.0;
    return counts;
}

bool is_pure(const Eigen::VectorXd& counts) { return counts.maxCoeff() == counts.sum(); }

int argmax_first(const Eigen::VectorXd& v) {
    int best = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        if (v(i) > v(best)) best = static_cast<int>(i);
    }
    return best;
}

// Weighted Gini of a binary partition from per-class counts:
// sum over sides of (n_side / n) * (1 - sum_c (count_c / n_side)^2).
double weighted_gini2(const std::vector<double>& left, double nl, const std::vector<double>& right,
                      double nr) {
    double sl = 0, sr = 0;
    for (std::size_t c = 0; c < left.size(); ++c) {
        const double pl = left[c] / nl;
        const double pr = right[c] / nr;
        sl += pl * pl;
        sr += pr * pr;
    }
    const double n = nl + nr;
    return (nl / n) * (1.0 - sl) + (nr / n) * (1.0 - sr);
}

struct CartSplit {
    bool found = false;
    double score = std::numeric_limits<double>::infinity();
    int feature = -1;
    bool numeric = false;
    double threshold = 0.0;
    int code = -1;
};

void consider_numeric(const Dataset& data, std::span<const int> rows, int f, int n_classes,
                      int min_leaf, CartSplit& best,
                      std::vector<std::pair<double, int>>& scratch) {
    scratch.clear();
    for (int r : rows) {
        const auto ur = static_cast<std::size_t>(r);
        scratch.emplace_back(data.value(static_cast<std::size_t>(f), ur), data.classes[ur]);
    }
    std::sort(scratch.begin(), scratch.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    const int n = static_cast<int>(scratch.size());
    std::vector<double> left(static_cast<std::size_t>(n_classes), 0.0);
    std::vector<double> right(static_cast<std::size_t>(n_classes), 0.0);
    for (const auto& [v, c] : scratch) right[static_cast<std::size_t>(c)] += 1.0;
    for (int i = 1; i < n; ++i) {
        const auto c = static_cast<std::size_t>(scratch[static_cast<std::size_t>(i) - 1].second);
        left[c] += 1.0;
        right[c] -= 1.0;
        const double lo = scratch[static_cast<std::size_t>(i) - 1].first;
        const double hi = scratch[static_cast<std::size_t>(i)].first;
        if (!(hi > lo)) continue; // not a boundary between distinct values
        if (i < min_leaf || n - i < min_leaf) continue;
        const double score = weighted_gini2(left, i, right, n - i);
        if (score < best.score - kSplitTolerance) {
            best = {true, score, f, true, lo + (hi - lo) / 2, -1};
        }
    }
}

void consider_categorical(const Dataset& data, std::span<const int> rows, int f, int n_classes,
                          int min_leaf, CartSplit& best) {
    const auto uf = static_cast<std::size_t>(f);
    const int n_codes = static_cast<int>(data.columns[uf].categories.size());
    const auto nc = static_cast<std::size_t>(n_classes);
    std::vector<double> per_code(static_cast<std::size_t>(n_codes) * nc, 0.0);
    std::vector<double> total(nc, 0.0);
    std::vector<int> code_size(static_cast<std::size_t>(n_codes), 0);
    for (int r : rows) {
        const auto ur = static_cast<std::size_t>(r);
        const auto code = static_cast<std::size_t>(data.code(uf, ur));
        const auto cls = static_cast<std::size_t>(data.classes[ur]);
        per_code[code * nc + cls] += 1.0;
        total[cls] += 1.0;
        ++code_size[code];
    }
    const int n = static_cast<int>(rows.size());
    std::vector<double> left(nc), right(nc);
    for (int code = 0; code < n_codes; ++code) {
        const int nl = code_size[static_cast<std::size_t>(code)];
        if (nl == 0 || nl == n) continue;
        if (nl < min_leaf || n - nl < min_leaf) continue;
        for (std::size_t c = 0; c < nc; ++c) {
            left[c] = per_code[static_cast<std::size_t>(code) * nc + c];
            right[c] = total[c] - left[c];
        }
        const double score = weighted_gini2(left, nl, right, n - nl);
        if (score < best.score - kSplitTolerance) {
            best = {true, score, f, false, 0.0, code};
        }
    }
}

std::unique_ptr<TreeNode> cart_build(const Dataset& data, std::span<const int> rows,
                                     std::span<const int> features, int n_classes,
                                     const TrainConfig& config, Rng* rng, int mtry, int depth,
                                     std::vector<std::pair<double, int>>& scratch) {
    Eigen::VectorXd counts = class_counts(data, rows, n_classes);
    const bool depth_capped = config.max_depth > 0 && depth >= config.max_depth;
    if (is_pure(counts) || depth_capped ||
        static_cast<int>(rows.size()) < 2 * config.min_samples_leaf) {
        return make_leaf(std::move(counts));
    }

    std::vector<int> candidates(features.begin(), features.end());
    if (rng != nullptr && mtry > 0 && mtry < static_cast<int>(candidates.size())) {
        for (int i = 0; i < mtry; ++i) {
            const auto j = static_cast<std::size_t>(i) +
                           static_cast<std::size_t>(rng->next_below(candidates.size() -
                                                                    static_cast<std::size_t>(i)));
            std::swap(candidates[static_cast<std::size_t>(i)], candidates[j]);
        }
        candidates.resize(static_cast<std::size_t>(mtry));
        std::sort(candidates.begin(), candidates.end());
    }

    CartSplit best;
    for (int f : candidates) {
        if (data.kind(static_cast<std::size_t>(f)) == FeatureKind::continuous) {
            consider_numeric(data, rows, f, n_classes, config.min_samples_leaf, best, scratch);
        } else {
            consider_categorical(data, rows, f, n_classes, config.min_samples_leaf, best);
        }
    }
    if (!best.found) return make_leaf(std::move(counts));

    std::vector<int> left_rows, right_rows;
    left_rows.reserve(rows.size());
    right_rows.reserve(rows.size());
    for (int r : rows) {
        const auto ur = static_cast<std::size_t>(r);
        const auto uf = static_cast<std::size_t>(best.feature);
        const bool to_left = best.numeric ? data.value(uf, ur) <= best.threshold
                                          : data.code(uf, ur) == best.code;
        (to_left ? left_rows : right_rows).push_back(r);
    }

    auto node = make_leaf(std::move(counts));
    node->type = best.numeric ? TreeNode::Type::numeric : TreeNode::Type::one_vs_rest;
    node->feature = best.feature;
    node->threshold = best.threshold;
    node->match_code = best.code;
    node->children.push_back(
        cart_build(data, left_rows, features, n_classes, config, rng, mtry, depth + 1, scratch));
    node->children.push_back(
        cart_build(data, right_rows, features, n_classes, config, rng, mtry, depth + 1, scratch));
    return node;
}

std::unique_ptr<TreeNode> id3_build(const Dataset& data, const DiscretizedView& view,
                                    std::span<const int> rows, std::span<const int> features,
                                    std::vector<char>& used, int n_classes,
                                    const TrainConfig& config, int depth) {
    Eigen::VectorXd counts = class_counts(data, rows, n_classes);
    const bool depth_capped = config.max_depth > 0 && depth >= config.max_depth;
    if (is_pure(counts) || depth_capped ||
        static_cast<int>(rows.size()) < 2 * config.min_samples_leaf) {
        return make_leaf(std::move(counts));
    }

    int best_feature = -1;
    double best_gain = -1.0; // any gain >= 0 beats this, so zero-gain splits stay legal
    for (int f : features) {
        const auto uf = static_cast<std::size_t>(f);
        if (used[uf] != 0) continue;
        const auto card = static_cast<std::size_t>(view.cardinality[uf]);
        if (card < 2) continue;
        std::vector<int> sizes(card, 0);
        for (int r : rows) ++sizes[static_cast<std::size_t>(view.codes[uf][static_cast<std::size_t>(r)])];
        int observed = 0;
        bool leaf_ok = true;
        for (int s : sizes) {
            if (s == 0) continue;
            ++observed;
            if (s < config.min_samples_leaf) leaf_ok = false;
        }
        if (observed < 2 || !leaf_ok) continue;

        std::vector<Eigen::VectorXd> children;
        std::vector<std::size_t> child_of(card, 0);
        for (std::size_t code = 0; code < card; ++code) {
            if (sizes[code] == 0) continue;
            child_of[code] = children.size();
            children.emplace_back(Eigen::VectorXd::Zero(n_classes));
        }
        for (int r : rows) {
            const auto ur = static_cast<std::size_t>(r);
            const auto code = static_cast<std::size_t>(view.codes[uf][ur]);
            children[child_of[code]](data.classes[ur]) += 1.0;
        }
        const double gain = info_gain(counts, children);
        if (gain > best_gain + kSplitTolerance) {
            best_gain = gain;
            best_feature = f;
        }
    }
    if (best_feature < 0) return make_leaf(std::move(counts));

    const auto uf = static_cast<std::size_t>(best_feature);
    const auto card = static_cast<std::size_t>(view.cardinality[uf]);
    std::vector<std::vector<int>> groups(card);
    for (int r : rows) {
        groups[static_cast<std::size_t>(view.codes[uf][static_cast<std::size_t>(r)])].push_back(r);
    }

    auto node = make_leaf(std::move(counts));
    node->type = TreeNode::Type::multiway;
    node->feature = best_feature;
    used[uf] = 1;
    std::size_t heaviest = 0;
    for (std::size_t code = 0; code < card; ++code) {
        if (groups[code].empty()) continue;
        if (node->children.empty() ||
            groups[code].size() > groups[static_cast<std::size_t>(
                                      node->child_codes[heaviest])].size()) {
            heaviest = node->child_codes.size();
        }
        node->child_codes.push_back(static_cast<int>(code));
        node->children.push_back(
            id3_build(data, view, groups[code], features, used, n_classes, config, depth + 1));
    }
    node->default_child = static_cast<int>(heaviest);
    used[uf] = 0;
    return node;
}

void check_train_inputs(const Dataset& data, std::span<const int> rows,
                        std::span<const int> features) {
    if (rows.empty()) throw EmptyInputError("cannot train on zero rows");
    if (features.empty()) throw ConfigError("cannot train with an empty feature set");
    for (int f : features) {
        if (f < 0 || static_cast<std::size_t>(f) >= data.n_features()) {
            throw ConfigError("feature index out of range: " + std::to_string(f));
        }
    }
}

} // namespace

double gini(const Eigen::VectorXd& counts) {
    if (counts.size() == 0) throw SizeError("gini of an empty count vector");
    if ((counts.array() < 0.0).any()) throw ConsistencyError("negative class count");
    const double n = counts.sum();
    if (n <= 0.0) throw SizeError("gini of a zero-total count vector");
    double sq = 0.0;
    for (Eigen::Index i = 0; i < counts.size(); ++i) {
        const double p = counts(i) / n;
        sq += p * p;
    }
    return 1.0 - sq;
}

double info_gain(const Eigen::VectorXd& parent, const std::vector<Eigen::VectorXd>& children) {
    if (children.empty()) throw SizeError("information gain needs at least one child");
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(parent.size());
    for (const auto& child : children) {
        if (child.size() != parent.size()) {
            throw ShapeError("child class arity differs from parent");
        }
        sum += child;
    }
    if (!(sum.array() == parent.array()).all()) {
        throw ConsistencyError("children counts do not partition the parent");
    }
    const double n = parent.sum();
    if (n <= 0.0) throw SizeError("information gain of an empty parent");
    double gain = entropy(parent);
    for (const auto& child : children) {
        const double nc = child.sum();
        if (nc > 0.0) gain -= (nc / n) * entropy(child);
    }
    return std::max(gain, 0.0);
}

int TreeNode::depth() const {
    int d = 0;
    for (const auto& child : children) d = std::max(d, 1 + child->depth());
    return d;
}

int TreeNode::n_leaves() const {
    if (is_leaf()) return 1;
    int total = 0;
    for (const auto& child : children) total += child->n_leaves();
    return total;
}

std::unique_ptr<TreeNode> make_leaf(Eigen::VectorXd counts) {
    auto node = std::make_unique<TreeNode>();
    node->counts = std::move(counts);
    const double n = node->counts.sum();
    if (n <= 0.0) throw EmptyInputError("leaf with no records");
    node->probs = node->counts / n;
    node->predicted = argmax_first(node->counts);
    return node;
}

Prediction Id3Model::predict(const Recode& recode, int row) const {
    const Dataset& data = *recode.data;
    const auto ur = static_cast<std::size_t>(row);
    const auto codes = [&](int f) {
        const auto uf = static_cast<std::size_t>(f);
        return data.kind(uf) == FeatureKind::categorical
                   ? recode.code(uf, ur)
                   : static_cast<std::int32_t>(binning_.bin_of(data.value(uf, ur), uf));
    };
    const TreeNode& leaf = descend(*root_, codes, [](int) { return 0.0; });
    return {leaf.predicted, leaf.probs};
}

nlohmann::json Id3Model::params_json() const {
    return {{"binning", fitted_binning_to_json(binning_)}, {"tree", tree_to_json(*root_)}};
}

Prediction CartModel::predict(const Recode& recode, int row) const {
    const Dataset& data = *recode.data;
    const auto ur = static_cast<std::size_t>(row);
    const TreeNode& leaf = descend(
        *root_, [&](int f) { return recode.code(static_cast<std::size_t>(f), ur); },
        [&](int f) { return data.value(static_cast<std::size_t>(f), ur); });
    return {leaf.predicted, leaf.probs};
}

nlohmann::json CartModel::params_json() const { return {{"tree", tree_to_json(*root_)}}; }

Id3Model train_id3(const Dataset& data, std::span<const int> rows, std::span<const int> features,
                   const TrainConfig& config) {
    config.validate();
    check_train_inputs(data, rows, features);
    Id3Model model;
    model.init_common(data, features, config);
    model.binning_ = fit_binning(data, config.id3_binning, rows);
    const DiscretizedView view = apply_binning(data, model.binning_);
    std::vector<char> used(data.n_features(), 0);
    model.root_ = id3_build(data, view, rows, features, used, model.n_classes(), config, 0);
    return model;
}

CartModel train_cart(const Dataset& data, std::span<const int> rows, std::span<const int> features,
                     const TrainConfig& config) {
    config.validate();
    check_train_inputs(data, rows, features);
    CartModel model;
    model.init_common(data, features, config);
    model.root_ = build_cart_tree(data, rows, features, model.n_classes(), config);
    return model;
}

std::unique_ptr<TreeNode> build_cart_tree(const Dataset& data, std::span<const int> rows,
                                          std::span<const int> features, int n_classes,
                                          const TrainConfig& config, Rng* rng, int mtry) {
    check_train_inputs(data, rows, features);
    std::vector<std::pair<double, int>> scratch;
    return cart_build(data, rows, features, n_classes, config, rng, mtry, 0, scratch);
}

nlohmann::json tree_to_json(const TreeNode& node) {
    nlohmann::json j;
    std::vector<long long> counts(static_cast<std::size_t>(node.counts.size()));
    for (Eigen::Index i = 0; i < node.counts.size(); ++i) {
        counts[static_cast<std::size_t>(i)] = static_cast<long long>(node.counts(i));
    }
    j["counts"] = counts;
    switch (node.type) {
    case TreeNode::Type::leaf:
        j["type"] = "leaf";
        break;
    case TreeNode::Type::numeric:
        j["type"] = "numeric";
        j["feature"] = node.feature;
        j["threshold"] = node.threshold;
        break;
    case TreeNode::Type::one_vs_rest:
        j["type"] = "one_vs_rest";
        j["feature"] = node.feature;
        j["code"] = node.match_code;
        break;
    case TreeNode::Type::multiway:
        j["type"] = "multiway";
        j["feature"] = node.feature;
        j["codes"] = node.child_codes;
        j["default_child"] = node.default_child;
        break;
    }
    if (!node.children.empty()) {
        auto children = nlohmann::json::array();
        for (const auto& child : node.children) children.push_back(tree_to_json(*child));
        j["children"] = std::move(children);
    }
    return j;
}

std::unique_ptr<TreeNode> tree_from_json(const nlohmann::json& j) {
    const auto raw = j.at("counts").get<std::vector<long long>>();
    Eigen::VectorXd counts(static_cast<Eigen::Index>(raw.size()));
    for (std::size_t i = 0; i < raw.size(); ++i) {
        counts(static_cast<Eigen::Index>(i)) = static_cast<double>(raw[i]);
    }
    auto node = make_leaf(std::move(counts));
    const auto type = j.at("type").get<std::string>();
    if (type == "leaf") return node;
    node->feature = j.at("feature").get<int>();
    if (type == "numeric") {
        node->type = TreeNode::Type::numeric;
        node->threshold = j.at("threshold").get<double>();
    } else if (type == "one_vs_rest") {
        node->type = TreeNode::Type::one_vs_rest;
        node->match_code = j.at("code").get<int>();
    } else if (type == "multiway") {
        node->type = TreeNode::Type::multiway;
        node->child_codes = j.at("codes").get<std::vector<int>>();
        node->default_child = j.at("default_child").get<int>();
    } else {
        throw DataError("unknown tree node type: " + type);
    }
    for (const auto& child : j.at("children")) node->children.push_back(tree_from_json(child));
    return node;
}

} // namespace netgauntlet
