#pragma once

#include "nsfp/common.hpp"
#include "nsfp/confspace/quadrature.hpp"
#include "nsfp/model/fene.hpp"

namespace nsfp {

/// Z = int_{|q| < sqrt(b)} (1 - |q|^2/b)^{b/2} dq in R^d.
double partition_function(double b, int dim);

/// Normalized Maxwellian M(q) = prod_j (1/Z_j)(1 - |q^j|^2/b_j)^{b_j/2}.
class Maxwellian {
public:
    explicit Maxwellian(FeneChain chain);

    const FeneChain& chain() const noexcept { return chain_; }
    double partition(int j) const { return z_.at(static_cast<std::size_t>(j)); }

    /// Value at q (K stacked d-vectors). Returns 0 on the boundary, throws outside.
    double eval(const Eigen::Ref<const VectorXd>& q) const;
    double log_eval(const Eigen::Ref<const VectorXd>& q) const;

    /// Gradient with respect to all components of q.
    VectorXd gradient(const Eigen::Ref<const VectorXd>& q) const;

    /// Single-spring factor M^j(q^j).
    double spring_factor(int j, double r2) const;

private:
    FeneChain chain_;
    std::vector<double> z_;
};

double maxwellian_eval(const FeneChain& chain, const Eigen::Ref<const VectorXd>& q);

/// Approximate Maxwellian M^m = max(M - 1/m, 0) + 1/m.
/// The index m = 0 stands for the exact Maxwellian (no floor).
class ApproxMaxwellian {
public:
    ApproxMaxwellian(Maxwellian maxwellian, int index);

    int index() const noexcept { return index_; }
    double floor() const noexcept { return index_ > 0 ? 1.0 / index_ : 0.0; }

    double core(double m_value) const { return std::max(m_value - floor(), 0.0); }
    double value(double m_value) const { return core(m_value) + floor(); }

    double eval(const Eigen::Ref<const VectorXd>& q) const { return value(maxwellian_.eval(q)); }
    const Maxwellian& maxwellian() const noexcept { return maxwellian_; }

private:
    Maxwellian maxwellian_;
    int index_;
};

/// Maxwellian data tabulated at the nodes of a configuration quadrature.
///
/// `values` is M (or M^m) at every node.  The q-gradient of that weight is
/// -decay(a, j) * q^j on spring j, which is all the divergence form of the
/// stress needs.  `uprime(a, j)` is U'(|q^j|^2/2).
struct NodalWeight {
    VectorXd values;
    MatrixXd decay;
    MatrixXd uprime;
};

NodalWeight tabulate_maxwellian(const Maxwellian& maxwellian, const ConfQuadrature& quad);
NodalWeight tabulate_approx(const ApproxMaxwellian& approx, const ConfQuadrature& quad);

/// Tightest constants c3, c4 with c3 <= dist(q, dD) U'(|q|^2/2) <= c4 sampled on a
/// radial grid.
struct FeneBoundConstants {
    double c3;
    double c4;
};
FeneBoundConstants sample_fene_constants(double b, int samples);

} // namespace nsfp
