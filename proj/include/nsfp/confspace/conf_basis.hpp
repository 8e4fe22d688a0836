#pragma once

#include "nsfp/common.hpp"
#include "nsfp/confspace/maxwellian.hpp"
#include "nsfp/confspace/quadrature.hpp"

namespace nsfp {

/// Orthonormal polynomial basis in q for the weighted inner product
/// <f, g> = int_D W f g dq, W = M^m.
///
/// Built by modified Gram-Schmidt (two passes) over monomials ordered by total
/// degree, then lexicographically with the first component's exponent largest.
/// Values and gradients are tabulated at the quadrature nodes; the monomial
/// coefficients are kept so the basis can also be evaluated off the nodes.
class ConfBasis {
public:
    int size() const noexcept { return static_cast<int>(values_.cols()); }
    int components() const noexcept { return static_cast<int>(gradients_.size()); }

    /// Q_beta(q_a), one column per basis function.
    const MatrixXd& values() const noexcept { return values_; }
    /// d Q_beta / d q_c at the nodes, one matrix per component c.
    const MatrixXd& gradient(int c) const { return gradients_.at(static_cast<std::size_t>(c)); }

    /// Total degree of the leading monomial of Q_beta.
    int degree(int beta) const { return degrees_.at(static_cast<std::size_t>(beta)); }
    int max_degree() const noexcept { return degrees_.empty() ? 0 : degrees_.back(); }

    /// Evaluate every basis function (or its gradient, dK x n) at an arbitrary q.
    VectorXd eval(const Eigen::Ref<const VectorXd>& q) const;
    MatrixXd eval_gradient(const Eigen::Ref<const VectorXd>& q) const;

    /// Max |<Q_a, Q_b> - delta_ab| in the discrete weighted inner product.
    double gram_residual() const noexcept { return gram_residual_; }

    /// The weighted quadrature used for the inner product (plain weight x W).
    const VectorXd& inner_weights() const noexcept { return inner_weights_; }

private:
    friend ConfBasis build_conf_basis(int, const VectorXd&, const ConfQuadrature&);

    std::vector<std::vector<int>> exponents_;
    MatrixXd coeffs_; // monomial -> basis
    std::vector<int> degrees_;
    MatrixXd values_;
    std::vector<MatrixXd> gradients_;
    VectorXd inner_weights_;
    double gram_residual_ = 0.0;
};

/// Basis with `weight` tabulated at the quadrature nodes.
ConfBasis build_conf_basis(int n_conf, const VectorXd& weight, const ConfQuadrature& quad);

ConfBasis build_conf_basis(int n_conf, const ApproxMaxwellian& mm, const ConfQuadrature& quad);

/// Number of monomials of total degree <= p in `vars` variables.
int monomial_count(int vars, int p);

} // namespace nsfp
