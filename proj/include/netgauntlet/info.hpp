#pragma once

#include <Eigen/Dense>

#include <span>

#include "netgauntlet/binning.hpp"
#include "netgauntlet/errors.hpp"

namespace netgauntlet {

/// Joint count table of two discrete variables. Probabilities are plug-in
/// estimates counts/total, no smoothing.
struct DiscreteDistribution {
    Eigen::MatrixXd joint; // counts, support(X) x support(Y)

    static DiscreteDistribution from_codes(std::span<const int> x, std::span<const int> y,
                                           int nx, int ny);

    double total() const { return joint.sum(); }
    Eigen::VectorXd margin_x() const { return joint.rowwise().sum(); }
    Eigen::VectorXd margin_y() const { return joint.colwise().sum(); }
    DiscreteDistribution transposed() const { return {joint.transpose()}; }

    void check_invariants() const;
};

/// Shannon entropy in bits of a count vector; 0 log 0 := 0.
double entropy(const Eigen::Ref<const Eigen::VectorXd>& counts);

/// I(X;Y) in bits via the double sum over p(x,y) log2(p(x,y)/(p(x)p(y))),
/// clamped to 0 from below.
double mutual_information(const DiscreteDistribution& d);

/// H(X) + H(Y) - H(X,Y); the same quantity by the entropy route, kept
/// separate so the two formulations can be checked against each other.
double mutual_information_entropy_route(const DiscreteDistribution& d);

double mi_with_label(const DiscretizedView& view, int feature, std::span<const int> labels,
                     int n_classes);

double mi_between_features(const DiscretizedView& view, int a, int b);

} // namespace netgauntlet
