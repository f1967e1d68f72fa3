#include "netgauntlet/info.hpp"

#include <cmath>

namespace netgauntlet {

DiscreteDistribution DiscreteDistribution::from_codes(std::span<const int> x, std::span<const int> y,
                                                      int nx, int ny) {
    if (x.size() != y.size()) throw ShapeError("joint tabulation needs equal-length code arrays");
    if (x.empty()) throw SizeError("joint tabulation needs at least one observation");
    DiscreteDistribution d;
    d.joint = Eigen::MatrixXd::Zero(nx, ny);
    for (std::size_t i = 0; i < x.size(); ++i) {
        d.joint(x[i], y[i]) += 1.0;
    }
    return d;
}

void DiscreteDistribution::check_invariants() const {
    if (joint.size() == 0) throw SizeError("empty joint table");
    if ((joint.array() < 0.0).any()) throw ConsistencyError("negative joint count");
}

double entropy(const Eigen::Ref<const Eigen::VectorXd>& counts) {
    const double total = counts.sum();
    if (counts.size() == 0 || total <= 0.0) throw SizeError("entropy of an empty distribution");
    double h = 0.0;
    for (long i = 0; i < counts.size(); ++i) {
        const double c = counts(i);
        if (c > 0.0) {
            const double p = c / total;
            h -= p * std::log2(p);
        }
    }
    return h < 0.0 ? 0.0 : h;
}

double mutual_information(const DiscreteDistribution& d) {
    d.check_invariants();
    const double n = d.total();
    if (n <= 0.0) throw SizeError("mutual information of an empty table");
    const Eigen::VectorXd mx = d.margin_x();
    const Eigen::VectorXd my = d.margin_y();
    double mi = 0.0;
    for (long i = 0; i < d.joint.rows(); ++i) {
        for (long j = 0; j < d.joint.cols(); ++j) {
            const double c = d.joint(i, j);
            if (c > 0.0) {
                mi += (c / n) * std::log2(c * n / (mx(i) * my(j)));
            }
        }
    }
    return mi < 0.0 ? 0.0 : mi;
}

double mutual_information_entropy_route(const DiscreteDistribution& d) {
    d.check_invariants();
    const Eigen::VectorXd flat =
        Eigen::Map<const Eigen::VectorXd>(d.joint.data(), d.joint.size());
    return entropy(d.margin_x()) + entropy(d.margin_y()) - entropy(flat);
}

double mi_with_label(const DiscretizedView& view, int feature, std::span<const int> labels,
                     int n_classes) {
    if (feature < 0 || static_cast<std::size_t>(feature) >= view.n_features()) {
        throw ShapeError("feature index out of range");
    }
    const auto d = DiscreteDistribution::from_codes(
        view.codes[static_cast<std::size_t>(feature)], labels,
        view.cardinality[static_cast<std::size_t>(feature)], n_classes);
    return mutual_information(d);
}

double mi_between_features(const DiscretizedView& view, int a, int b) {
    const auto d = DiscreteDistribution::from_codes(
        view.codes[static_cast<std::size_t>(a)], view.codes[static_cast<std::size_t>(b)],
        view.cardinality[static_cast<std::size_t>(a)], view.cardinality[static_cast<std::size_t>(b)]);
    return mutual_information(d);
}

} // namespace netgauntlet
