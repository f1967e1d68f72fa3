#include "netgauntlet/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "netgauntlet/parallel.hpp"

namespace netgauntlet {

std::optional<double> pearson(const Eigen::Ref<const Eigen::VectorXd>& x,
                              const Eigen::Ref<const Eigen::VectorXd>& y) {
    if (x.size() != y.size()) throw ShapeError("pearson: length mismatch");
    if (x.size() < 2) throw SizeError("pearson: need at least 2 observations");
    const double n = static_cast<double>(x.size());
    const Eigen::ArrayXd dx = x.array() - x.sum() / n;
    const Eigen::ArrayXd dy = y.array() - y.sum() / n;
    const double sxx = (dx * dx).sum();
    const double syy = (dy * dy).sum();
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    // rounding can push exactly collinear columns a few ulps past 1
    return std::clamp((dx * dy).sum() / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationMatrix correlation_matrix(const Eigen::MatrixXd& X, int jobs) {
    if (X.rows() < 2) throw SizeError("correlation matrix needs at least 2 records");
    const long m = X.cols();
    CorrelationMatrix cm;
    cm.r = Eigen::MatrixXd::Zero(m, m);

    // Center once; each (i, j) cell is then independent, so rows can be
    // computed by concurrent workers without affecting the result.
    const double n = static_cast<double>(X.rows());
    Eigen::MatrixXd centered = X.rowwise() - (X.colwise().sum() / n);
    Eigen::VectorXd ss(m);
    for (long f = 0; f < m; ++f) ss(f) = centered.col(f).squaredNorm();

    const double nan = std::numeric_limits<double>::quiet_NaN();
    parallel_for(static_cast<std::size_t>(m), jobs, [&](std::size_t fi) {
        const long i = static_cast<long>(fi);
        cm.r(i, i) = ss(i) == 0.0 ? nan : 1.0;
        for (long j = i + 1; j < m; ++j) {
            double v;
            if (ss(i) == 0.0 || ss(j) == 0.0) {
                v = nan;
            } else {
                v = centered.col(i).dot(centered.col(j)) / std::sqrt(ss(i) * ss(j));
                v = std::clamp(v, -1.0, 1.0);
            }
            cm.r(i, j) = v;
        }
    });
    // mirror after the parallel fill so r(i,j) == r(j,i) bitwise
    for (long i = 0; i < m; ++i) {
        for (long j = i + 1; j < m; ++j) cm.r(j, i) = cm.r(i, j);
    }
    return cm;
}

} // namespace netgauntlet
