#pragma once

#include <Eigen/Dense>

#include <optional>

#include "netgauntlet/errors.hpp"

namespace netgauntlet {

/// Sample Pearson coefficient. Zero variance in either input makes the
/// coefficient undefined (nullopt); the redundancy filter treats that as 0.
std::optional<double> pearson(const Eigen::Ref<const Eigen::VectorXd>& x,
                              const Eigen::Ref<const Eigen::VectorXd>& y);

/// Symmetric by construction: each pair is computed once and mirrored
/// bitwise. Undefined entries are stored as NaN.
struct CorrelationMatrix {
    Eigen::MatrixXd r;

    int n_features() const { return static_cast<int>(r.rows()); }
    bool defined(int i, int j) const { return !std::isnan(r(i, j)); }
    /// |r| with undefined treated as 0.
    double abs_or_zero(int i, int j) const { return defined(i, j) ? std::abs(r(i, j)) : 0.0; }
};

CorrelationMatrix correlation_matrix(const Eigen::MatrixXd& X, int jobs = 1);

} // namespace netgauntlet
