#pragma once

#include "nsfp/common.hpp"
#include "nsfp/model/fene.hpp"

namespace nsfp {

/// Nodes and weights of a Gauss rule on (0, 1) with weight (1-s)^alpha s^beta.
struct GaussRule {
    VectorXd nodes;
    VectorXd weights;
};

/// Gauss-Jacobi rule on (0, 1) via the Golub-Welsch eigenvalue method.
/// Exact for p(s) (1-s)^alpha s^beta with deg p <= 2n - 1.
GaussRule gauss_jacobi(int n, double alpha, double beta);

/// Gauss-Legendre rule on (-1, 1).
GaussRule gauss_legendre(int n);

/// Quadrature over the FENE configuration domain D = D^1 x ... x D^K.
///
/// Each ball uses radial Gauss-Jacobi in s = |q|^2 / b with weight
/// (1-s)^{b/2-1} s^{(d-2)/2}, times a spectrally accurate angular rule
/// (trapezoid on the circle; Gauss-Legendre x trapezoid on the sphere).
/// The Jacobi exponent b/2 - 1 makes both M p(q) and M U' p(q) integrable
/// exactly for polynomials p, which is what the Kramers identity needs.
/// Springs are combined as a tensor product.
class ConfQuadrature {
public:
    ConfQuadrature(const FeneChain& chain, int radial_order, int angular_order);

    int size() const noexcept { return static_cast<int>(weights_.size()); }
    int dim() const noexcept { return dim_; }
    int springs() const noexcept { return springs_; }
    int components() const noexcept { return dim_ * springs_; }
    int radial_order() const noexcept { return radial_order_; }
    int angular_order() const noexcept { return angular_order_; }

    /// Node a as a (d*K)-vector (spring vectors stacked).
    auto node(int a) const { return nodes_.row(a).transpose(); }
    const MatrixXd& nodes() const noexcept { return nodes_; }

    /// Plain weights: int_D f dq ~ sum_a w_a f(q_a).
    const VectorXd& weights() const noexcept { return weights_; }

    /// |q^j|^2 at every node, one column per spring.
    const MatrixXd& squared_radii() const noexcept { return r2_; }

    /// Highest total polynomial degree in q integrated exactly against M.
    int exact_degree() const noexcept { return exact_degree_; }

private:
    int dim_;
    int springs_;
    int radial_order_;
    int angular_order_;
    int exact_degree_;
    MatrixXd nodes_;
    VectorXd weights_;
    MatrixXd r2_;
};

} // namespace nsfp
