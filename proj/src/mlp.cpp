#include "netgauntlet/mlp.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "netgauntlet/errors.hpp"
#include "netgauntlet/rng.hpp"

namespace netgauntlet {

namespace {

Eigen::MatrixXd hidden_activations(const MlpParams& p, const Eigen::MatrixXd& X) {
    Eigen::MatrixXd Z = (X * p.W1).rowwise() + p.b1;
    return (1.0 / (1.0 + (-Z.array()).exp())).matrix();
}

Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& logits) {
    Eigen::MatrixXd P = logits;
    for (Eigen::Index r = 0; r < P.rows(); ++r) {
        P.row(r).array() -= P.row(r).maxCoeff();
        P.row(r) = P.row(r).array().exp();
        P.row(r) /= P.row(r).sum();
    }
    return P;
}

double cross_entropy(const Eigen::MatrixXd& P, const Eigen::MatrixXd& Y) {
    const double n = static_cast<double>(P.rows());
    double loss = 0.0;
    for (Eigen::Index r = 0; r < P.rows(); ++r) {
        for (Eigen::Index c = 0; c < P.cols(); ++c) {
            if (Y(r, c) > 0.0) loss -= Y(r, c) * std::log(P(r, c));
        }
    }
    return loss / n;
}

struct StepResult {
    double loss = 0.0;
    MlpParams grads;
};

StepResult mlp_step(const MlpParams& p, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y) {
    const Eigen::MatrixXd H = hidden_activations(p, X);
    const Eigen::MatrixXd P = softmax_rows((H * p.W2).rowwise() + p.b2);
    const double n = static_cast<double>(X.rows());

    StepResult out;
    out.loss = cross_entropy(P, Y);
    const Eigen::MatrixXd dLogits = (P - Y) / n;
    out.grads.W2 = H.transpose() * dLogits;
    out.grads.b2 = dLogits.colwise().sum();
    const Eigen::MatrixXd dH = dLogits * p.W2.transpose();
    const Eigen::MatrixXd dZ1 =
        (dH.array() * H.array() * (1.0 - H.array())).matrix();
    out.grads.W1 = X.transpose() * dZ1;
    out.grads.b1 = dZ1.colwise().sum();
    return out;
}

Eigen::MatrixXd fill_uniform(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rng.next_range(-0.5, 0.5);
    }
    return m;
}

std::vector<std::vector<double>> matrix_rows(const Eigen::MatrixXd& m) {
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        rows[static_cast<std::size_t>(r)].assign(m.row(r).begin(), m.row(r).end());
    }
    return rows;
}

} // namespace

Eigen::MatrixXd mlp_forward(const MlpParams& p, const Eigen::MatrixXd& X) {
    return softmax_rows((hidden_activations(p, X) * p.W2).rowwise() + p.b2);
}

double mlp_loss(const MlpParams& p, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y) {
    return cross_entropy(mlp_forward(p, X), Y);
}

MlpParams mlp_gradients(const MlpParams& p, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y) {
    return mlp_step(p, X, Y).grads;
}

Eigen::RowVectorXd MlpModel::encode(const Recode& recode, int row) const {
    const Dataset& data = *recode.data;
    const auto ur = static_cast<std::size_t>(row);
    Eigen::RowVectorXd x = Eigen::RowVectorXd::Zero(input_dim_);
    for (const auto& slot : slots_) {
        const auto uf = static_cast<std::size_t>(slot.feature);
        if (slot.categorical) {
            const std::int32_t code = recode.code(uf, ur);
            if (code >= 0 && code < slot.width) x(slot.offset + code) = 1.0;
        } else if (slot.range > 0.0) {
            x(slot.offset) = (data.value(uf, ur) - slot.lo) / slot.range;
        }
    }
    return x;
}

Prediction MlpModel::predict(const Recode& recode, int row) const {
    const Eigen::MatrixXd P = mlp_forward(params_, encode(recode, row));
    int best = 0;
    for (Eigen::Index c = 1; c < P.cols(); ++c) {
        if (P(0, c) > P(0, best)) best = static_cast<int>(c);
    }
    Prediction pred;
    pred.cls = best;
    pred.scores = P.row(0).transpose();
    return pred;
}

nlohmann::json MlpModel::params_json() const {
    auto slots = nlohmann::json::array();
    for (const auto& s : slots_) {
        slots.push_back({{"feature", s.feature},
                         {"categorical", s.categorical},
                         {"offset", s.offset},
                         {"width", s.width},
                         {"lo", s.lo},
                         {"range", s.range}});
    }
    return {{"slots", std::move(slots)},
            {"input_dim", input_dim_},
            {"W1", matrix_rows(params_.W1)},
            {"b1", std::vector<double>(params_.b1.begin(), params_.b1.end())},
            {"W2", matrix_rows(params_.W2)},
            {"b2", std::vector<double>(params_.b2.begin(), params_.b2.end())}};
}

MlpModel train_mlp(const Dataset& data, std::span<const int> rows, std::span<const int> features,
                   const TrainConfig& config) {
    config.validate();
    if (rows.empty()) throw EmptyInputError("cannot train on zero rows");
    if (features.empty()) throw ConfigError("cannot train with an empty feature set");

    MlpModel model;
    model.init_common(data, features, config);

    int offset = 0;
    for (int f : features) {
        const auto uf = static_cast<std::size_t>(f);
        MlpModel::Slot slot;
        slot.feature = f;
        slot.offset = offset;
        if (data.kind(uf) == FeatureKind::categorical) {
            slot.categorical = true;
            slot.width = static_cast<int>(data.columns[uf].categories.size());
        } else {
            double lo = std::numeric_limits<double>::infinity();
            double hi = -std::numeric_limits<double>::infinity();
            for (int r : rows) {
                const double v = data.value(uf, static_cast<std::size_t>(r));
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            slot.lo = lo;
            slot.range = hi > lo ? hi - lo : 0.0;
        }
        offset += slot.width;
        model.slots_.push_back(slot);
    }
    model.input_dim_ = offset;

    const auto n = static_cast<Eigen::Index>(rows.size());
    const int n_classes = model.n_classes();
    const Recode recode = model.make_recode(data);
    Eigen::MatrixXd X(n, model.input_dim_);
    Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(n, n_classes);
    for (Eigen::Index i = 0; i < n; ++i) {
        const int r = rows[static_cast<std::size_t>(i)];
        X.row(i) = model.encode(recode, r);
        Y(i, data.classes[static_cast<std::size_t>(r)]) = 1.0;
    }

    Rng init(derive_seed(config.seed, SeedRole::mlp_init));
    MlpParams p;
    p.W1 = fill_uniform(model.input_dim_, config.hidden_units, init);
    p.b1 = Eigen::RowVectorXd::Zero(config.hidden_units);
    p.W2 = fill_uniform(config.hidden_units, n_classes, init);
    p.b2 = Eigen::RowVectorXd::Zero(n_classes);

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    const auto batch = static_cast<Eigen::Index>(config.batch_size);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        Rng shuffle_rng(
            derive_seed(config.seed, SeedRole::mlp_shuffle, static_cast<std::uint64_t>(epoch)));
        shuffle_rng.shuffle(order);

        double epoch_loss = 0.0;
        for (Eigen::Index start = 0; start < n; start += batch) {
            const Eigen::Index size = std::min(batch, n - start);
            Eigen::MatrixXd Xb(size, model.input_dim_);
            Eigen::MatrixXd Yb(size, n_classes);
            for (Eigen::Index i = 0; i < size; ++i) {
                Xb.row(i) = X.row(order[static_cast<std::size_t>(start + i)]);
                Yb.row(i) = Y.row(order[static_cast<std::size_t>(start + i)]);
            }
            const StepResult step = mlp_step(p, Xb, Yb);
            if (!std::isfinite(step.loss)) {
                throw TrainingDiverged("training loss became non-finite in epoch " +
                                           std::to_string(epoch + 1),
                                       epoch + 1);
            }
            p.W1 -= config.learning_rate * step.grads.W1;
            p.b1 -= config.learning_rate * step.grads.b1;
            p.W2 -= config.learning_rate * step.grads.W2;
            p.b2 -= config.learning_rate * step.grads.b2;
            epoch_loss += step.loss * static_cast<double>(size);
        }
        model.epoch_losses_.push_back(epoch_loss / static_cast<double>(n));
    }
    model.params_ = std::move(p);
    return model;
}

} // namespace netgauntlet
