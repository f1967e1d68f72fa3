#include "netgauntlet/classifier.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "netgauntlet/errors.hpp"
#include "netgauntlet/forest.hpp"
#include "netgauntlet/mlp.hpp"
#include "netgauntlet/tree.hpp"

namespace netgauntlet {

namespace {

Eigen::MatrixXd matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows[0].size()) throw ShapeError("ragged weight matrix");
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
    }
    return m;
}

Eigen::RowVectorXd rowvector_from(const std::vector<double>& v) {
    Eigen::RowVectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
    return out;
}

} // namespace

std::string to_string(ClassifierKind kind) {
    switch (kind) {
    case ClassifierKind::id3: return "id3";
    case ClassifierKind::cart: return "cart";
    case ClassifierKind::random_forest: return "random_forest";
    case ClassifierKind::mlp: return "mlp";
    }
    throw ConfigError("unknown classifier kind");
}

ClassifierKind classifier_kind_from_string(const std::string& name) {
    if (name == "id3") return ClassifierKind::id3;
    if (name == "cart") return ClassifierKind::cart;
    if (name == "random_forest") return ClassifierKind::random_forest;
    if (name == "mlp") return ClassifierKind::mlp;
    throw ConfigError("unknown classifier: " + name);
}

void TrainConfig::validate() const {
    if (max_depth < 0) throw ConfigError("max_depth must be >= 0");
    if (min_samples_leaf < 1) throw ConfigError("min_samples_leaf must be >= 1");
    if (id3_binning.n_bins < 2) throw ConfigError("n_bins must be >= 2");
    if (n_trees < 1) throw ConfigError("n_trees must be >= 1");
    if (n_features_per_split < 0) throw ConfigError("n_features_per_split must be >= 0");
    if (hidden_units < 1) throw ConfigError("hidden_units must be >= 1");
    if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
    if (epochs < 1) throw ConfigError("epochs must be >= 1");
    if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
    if (jobs < 1) throw ConfigError("jobs must be >= 1");
}

nlohmann::json TrainConfig::to_json() const {
    return {{"kind", netgauntlet::to_string(kind)},
            {"max_depth", max_depth},
            {"min_samples_leaf", min_samples_leaf},
            {"id3_binning", binning_spec_to_json(id3_binning)},
            {"n_trees", n_trees},
            {"n_features_per_split", n_features_per_split},
            {"bootstrap", bootstrap},
            {"hidden_units", hidden_units},
            {"learning_rate", learning_rate},
            {"epochs", epochs},
            {"batch_size", batch_size},
            {"seed", seed}};
}

TrainConfig TrainConfig::from_json(const nlohmann::json& j) {
    TrainConfig c;
    c.kind = classifier_kind_from_string(j.at("kind").get<std::string>());
    c.max_depth = j.at("max_depth").get<int>();
    c.min_samples_leaf = j.at("min_samples_leaf").get<int>();
    c.id3_binning = binning_spec_from_json(j.at("id3_binning"));
    c.n_trees = j.at("n_trees").get<int>();
    c.n_features_per_split = j.at("n_features_per_split").get<int>();
    c.bootstrap = j.at("bootstrap").get<bool>();
    c.hidden_units = j.at("hidden_units").get<int>();
    c.learning_rate = j.at("learning_rate").get<double>();
    c.epochs = j.at("epochs").get<int>();
    c.batch_size = j.at("batch_size").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.validate();
    return c;
}

void Model::init_common(const Dataset& data, std::span<const int> features,
                        const TrainConfig& config) {
    schema_signature_ = data.schema_signature();
    features_.assign(features.begin(), features.end());
    n_classes_ = data.scheme.n_classes();
    class_names_ = data.scheme.class_names();
    train_categories_.assign(data.n_features(), {});
    for (int f : features) {
        const auto uf = static_cast<std::size_t>(f);
        if (data.kind(uf) == FeatureKind::categorical) {
            train_categories_[uf] = data.columns[uf].categories;
        }
    }
    config_echo_ = config.to_json();
}

Recode Model::make_recode(const Dataset& data) const {
    if (data.schema_signature() != schema_signature_) {
        throw SchemaError("dataset schema differs from the model's training schema");
    }
    Recode recode;
    recode.data = &data;
    recode.maps.resize(data.n_features());
    for (std::size_t f = 0; f < data.n_features(); ++f) {
        const auto& trained = train_categories_[f];
        if (trained.empty()) continue;
        std::unordered_map<std::string, std::int32_t> index;
        index.reserve(trained.size());
        for (std::size_t c = 0; c < trained.size(); ++c) {
            index.emplace(trained[c], static_cast<std::int32_t>(c));
        }
        const auto& cats = data.columns[f].categories;
        auto& map = recode.maps[f];
        map.resize(cats.size(), -1);
        for (std::size_t c = 0; c < cats.size(); ++c) {
            const auto it = index.find(cats[c]);
            if (it != index.end()) map[c] = it->second;
        }
    }
    return recode;
}

nlohmann::json Model::to_json() const {
    return {{"kind", netgauntlet::to_string(kind())},
            {"schema_signature", schema_signature_},
            {"features", features_},
            {"n_classes", n_classes_},
            {"class_names", class_names_},
            {"train_categories", train_categories_},
            {"config", config_echo_},
            {"params", params_json()}};
}

void Model::load_common(const nlohmann::json& j) {
    schema_signature_ = j.at("schema_signature").get<std::string>();
    features_ = j.at("features").get<std::vector<int>>();
    n_classes_ = j.at("n_classes").get<int>();
    class_names_ = j.at("class_names").get<std::vector<std::string>>();
    train_categories_ = j.at("train_categories").get<std::vector<std::vector<std::string>>>();
    config_echo_ = j.at("config");
}

std::unique_ptr<Model> train_model(const Dataset& data, std::span<const int> rows,
                                   std::span<const int> features, const TrainConfig& config) {
    config.validate();
    switch (config.kind) {
    case ClassifierKind::id3:
        return std::make_unique<Id3Model>(train_id3(data, rows, features, config));
    case ClassifierKind::cart:
        return std::make_unique<CartModel>(train_cart(data, rows, features, config));
    case ClassifierKind::random_forest:
        return std::make_unique<ForestModel>(train_forest(data, rows, features, config));
    case ClassifierKind::mlp:
        return std::make_unique<MlpModel>(train_mlp(data, rows, features, config));
    }
    throw ConfigError("unknown classifier kind");
}

std::unique_ptr<Model> model_from_json(const nlohmann::json& j) {
    const auto kind = classifier_kind_from_string(j.at("kind").get<std::string>());
    const auto& params = j.at("params");
    std::unique_ptr<Model> model;
    switch (kind) {
    case ClassifierKind::id3: {
        auto m = std::make_unique<Id3Model>();
        m->binning_ = fitted_binning_from_json(params.at("binning"));
        m->root_ = tree_from_json(params.at("tree"));
        model = std::move(m);
        break;
    }
    case ClassifierKind::cart: {
        auto m = std::make_unique<CartModel>();
        m->root_ = tree_from_json(params.at("tree"));
        model = std::move(m);
        break;
    }
    case ClassifierKind::random_forest: {
        auto m = std::make_unique<ForestModel>();
        for (const auto& tree : params.at("trees")) m->trees_.push_back(tree_from_json(tree));
        m->tree_seeds_ = params.at("tree_seeds").get<std::vector<std::uint64_t>>();
        m->mtry_ = params.at("mtry").get<int>();
        m->bootstrap_ = params.at("bootstrap").get<bool>();
        if (m->trees_.empty()) throw DataError("forest model has no trees");
        model = std::move(m);
        break;
    }
    case ClassifierKind::mlp: {
        auto m = std::make_unique<MlpModel>();
        for (const auto& js : params.at("slots")) {
            MlpModel::Slot slot;
            slot.feature = js.at("feature").get<int>();
            slot.categorical = js.at("categorical").get<bool>();
            slot.offset = js.at("offset").get<int>();
            slot.width = js.at("width").get<int>();
            slot.lo = js.at("lo").get<double>();
            slot.range = js.at("range").get<double>();
            m->slots_.push_back(slot);
        }
        m->input_dim_ = params.at("input_dim").get<int>();
        m->params_.W1 = matrix_from_rows(params.at("W1").get<std::vector<std::vector<double>>>());
        m->params_.b1 = rowvector_from(params.at("b1").get<std::vector<double>>());
        m->params_.W2 = matrix_from_rows(params.at("W2").get<std::vector<std::vector<double>>>());
        m->params_.b2 = rowvector_from(params.at("b2").get<std::vector<double>>());
        model = std::move(m);
        break;
    }
    }
    model->load_common(j);
    return model;
}

std::vector<int> all_features(const Dataset& data) {
    std::vector<int> features(data.n_features());
    std::iota(features.begin(), features.end(), 0);
    return features;
}

std::vector<int> all_rows(const Dataset& data) {
    std::vector<int> rows(data.n_records);
    std::iota(rows.begin(), rows.end(), 0);
    return rows;
}

} // namespace netgauntlet
