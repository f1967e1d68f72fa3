#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "netgauntlet/binning.hpp"
#include "netgauntlet/dataset.hpp"

namespace netgauntlet {

enum class ClassifierKind { id3, cart, random_forest, mlp };

std::string to_string(ClassifierKind kind);
ClassifierKind classifier_kind_from_string(const std::string& name);

struct TrainConfig {
    ClassifierKind kind = ClassifierKind::cart;
    // trees
    int max_depth = 0; // 0 = unlimited
    int min_samples_leaf = 1;
    BinningSpec id3_binning; // discretization of continuous features for ID3
    // forest
    int n_trees = 100;
    int n_features_per_split = 0; // 0 = floor(sqrt(n_features))
    bool bootstrap = true;
    // mlp
    int hidden_units = 32;
    double learning_rate = 0.1;
    int epochs = 50;
    int batch_size = 32;
    // shared
    std::uint64_t seed = 0;
    int jobs = 1;

    void validate() const;
    nlohmann::json to_json() const;
    static TrainConfig from_json(const nlohmann::json& j);
};

struct Prediction {
    int cls = 0;
    Eigen::VectorXd scores; // per-class, sums to 1
};

/// Positive-class score under the binary collapse (attack = any class > 0).
inline double attack_score(const Prediction& p) { return 1.0 - p.scores(0); }

/// Translates a dataset's categorical codes into the codes the model was
/// trained with (matched by category text; unseen text maps to -1).
struct Recode {
    const Dataset* data = nullptr;
    std::vector<std::vector<std::int32_t>> maps; // per schema feature; empty for continuous

    std::int32_t code(std::size_t feature, std::size_t row) const {
        const auto& m = maps[feature];
        const std::int32_t c = data->code(feature, row);
        return static_cast<std::size_t>(c) < m.size() ? m[static_cast<std::size_t>(c)] : -1;
    }
};

/// Uniform train/predict/score surface over the four classifiers. Models
/// are immutable once trained and safe to share across workers.
class Model {
public:
    virtual ~Model() = default;
    virtual ClassifierKind kind() const = 0;

    int n_classes() const { return n_classes_; }
    const std::vector<int>& features() const { return features_; }
    const std::vector<std::string>& class_names() const { return class_names_; }

    /// Throws SchemaError if the dataset's schema differs from training.
    Recode make_recode(const Dataset& data) const;

    virtual Prediction predict(const Recode& recode, int row) const = 0;

    /// Convenience for single rows; batch callers should reuse a Recode.
    Prediction predict_row(const Dataset& data, int row) const {
        return predict(make_recode(data), row);
    }

    nlohmann::json to_json() const;

protected:
    virtual nlohmann::json params_json() const = 0;
    void init_common(const Dataset& data, std::span<const int> features,
                     const TrainConfig& config);
    void load_common(const nlohmann::json& j);
    friend std::unique_ptr<Model> model_from_json(const nlohmann::json& j);

    std::string schema_signature_;
    std::vector<int> features_;
    int n_classes_ = 2;
    std::vector<std::string> class_names_;
    std::vector<std::vector<std::string>> train_categories_; // indexed by schema feature; empty for continuous
    nlohmann::json config_echo_;
};

std::unique_ptr<Model> train_model(const Dataset& data, std::span<const int> rows,
                                   std::span<const int> features, const TrainConfig& config);

std::unique_ptr<Model> model_from_json(const nlohmann::json& j);

/// All schema feature indices, the default feature set.
std::vector<int> all_features(const Dataset& data);
std::vector<int> all_rows(const Dataset& data);

} // namespace netgauntlet
