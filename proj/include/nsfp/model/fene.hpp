#pragma once

#include "nsfp/common.hpp"

#include <vector>

namespace nsfp {

/// FENE spring potential U(s) = -(b/2) ln(1 - 2s/b), s = |q|^2/2 in [0, b/2).
double fene_potential(double s, double b);

/// U'(s) = b / (b - 2s).
double fene_potential_deriv(double s, double b);

/// Bead-spring chain with K FENE springs in R^d.
///
/// Each spring j lives in the open ball D^j of radius sqrt(b_j); the
/// configuration domain is the product D = D^1 x ... x D^K.  The extensibility
/// parameters must satisfy b_j >= 2; b_j = 2 is the borderline case where the
/// Maxwellian decays like dist^1 at the boundary.
class FeneChain {
public:
    FeneChain(int dim, std::vector<double> b);

    int dim() const noexcept { return dim_; }
    int springs() const noexcept { return static_cast<int>(b_.size()); }
    double b(int j) const { return b_.at(static_cast<std::size_t>(j)); }
    const std::vector<double>& b_values() const noexcept { return b_; }
    double radius(int j) const;

    /// Maxwellian decay exponent gamma_j = b_j / 2.
    double gamma(int j) const { return 0.5 * b(j); }

    /// True when every spring vector q^j lies strictly inside its ball.
    /// `q` holds K consecutive d-vectors.
    bool contains(const Eigen::Ref<const VectorXd>& q) const;

private:
    int dim_;
    std::vector<double> b_;
};

} // namespace nsfp
