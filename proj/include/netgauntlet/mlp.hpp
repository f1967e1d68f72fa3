#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "netgauntlet/classifier.hpp"

namespace netgauntlet {

struct MlpParams {
    Eigen::MatrixXd W1; // input_dim x hidden
    Eigen::RowVectorXd b1;
    Eigen::MatrixXd W2; // hidden x n_classes
    Eigen::RowVectorXd b2;
};

/// Class probabilities, one row per record: softmax(sigmoid(X W1 + b1) W2 + b2).
Eigen::MatrixXd mlp_forward(const MlpParams& p, const Eigen::MatrixXd& X);

/// Mean cross-entropy (natural log) against one-hot targets Y.
double mlp_loss(const MlpParams& p, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y);

/// Analytic gradients of mlp_loss in the same shapes as the parameters.
MlpParams mlp_gradients(const MlpParams& p, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y);

/// One hidden layer, sigmoid activations, softmax output, trained with
/// mini-batch SGD. Inputs are min-max normalized continuous features plus
/// one-hot categorical blocks; a category unseen in training encodes as an
/// all-zero block.
class MlpModel final : public Model {
public:
    struct Slot {
        int feature = 0; // schema feature index
        bool categorical = false;
        int offset = 0; // first input column of this feature's block
        int width = 1;  // 1 for continuous, cardinality for categorical
        double lo = 0.0;
        double range = 0.0; // 0 marks a constant feature, which encodes as 0
    };

    ClassifierKind kind() const override { return ClassifierKind::mlp; }
    Prediction predict(const Recode& recode, int row) const override;

    Eigen::RowVectorXd encode(const Recode& recode, int row) const;
    int input_dim() const { return input_dim_; }
    const MlpParams& params() const { return params_; }
    const std::vector<double>& epoch_losses() const { return epoch_losses_; }

protected:
    nlohmann::json params_json() const override;

private:
    friend MlpModel train_mlp(const Dataset&, std::span<const int>, std::span<const int>,
                              const TrainConfig&);
    friend std::unique_ptr<Model> model_from_json(const nlohmann::json&);

    std::vector<Slot> slots_;
    int input_dim_ = 0;
    MlpParams params_;
    std::vector<double> epoch_losses_;
};

/// Deterministic for a fixed config: weights come from derive_seed(seed,
/// mlp_init), epoch e's shuffle from derive_seed(seed, mlp_shuffle, e).
/// Throws TrainingDiverged when a batch loss stops being finite.
MlpModel train_mlp(const Dataset& data, std::span<const int> rows, std::span<const int> features,
                   const TrainConfig& config);

} // namespace netgauntlet
