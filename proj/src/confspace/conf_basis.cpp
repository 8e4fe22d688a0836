#include "nsfp/confspace/conf_basis.hpp"

#include <cmath>
#include <sstream>

namespace nsfp {

namespace {

// Exponent tuples of total degree p in `vars` variables, first exponent largest first.
void append_degree(int vars, int p, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(prefix.size()) == vars - 1) {
        prefix.push_back(p);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int e = p; e >= 0; --e) {
        prefix.push_back(e);
        append_degree(vars, p - e, prefix, out);
        prefix.pop_back();
    }
}

double monomial(const std::vector<int>& e, const Eigen::Ref<const VectorXd>& q) {
    double v = 1.0;
    for (std::size_t c = 0; c < e.size(); ++c) {
        for (int k = 0; k < e[c]; ++k) v *= q(static_cast<Eigen::Index>(c));
    }
    return v;
}

double monomial_derivative(const std::vector<int>& e, int c, const Eigen::Ref<const VectorXd>& q) {
    if (e[static_cast<std::size_t>(c)] == 0) return 0.0;
    std::vector<int> lowered = e;
    lowered[static_cast<std::size_t>(c)] -= 1;
    return e[static_cast<std::size_t>(c)] * monomial(lowered, q);
}

} // namespace

int monomial_count(int vars, int p) {
    // C(vars + p, p)
    double c = 1.0;
    for (int i = 1; i <= p; ++i) c = c * (vars + i) / i;
    return static_cast<int>(std::lround(c));
}

ConfBasis build_conf_basis(int n_conf, const VectorXd& weight, const ConfQuadrature& quad) {
    if (n_conf < 1) throw DomainError("configuration basis needs at least one function");
    if (weight.size() != quad.size()) {
        throw DomainError("configuration basis: weight does not match the quadrature");
    }
    const int vars = quad.components();
    const int nq = quad.size();

    ConfBasis basis;
    basis.inner_weights_ = (quad.weights().array() * weight.array()).matrix();
    const VectorXd& W = basis.inner_weights_;

    int p = 0;
    while (monomial_count(vars, p) < n_conf) ++p;
    if (2 * p > quad.exact_degree()) {
        std::ostringstream msg;
        msg << "configuration quadrature too coarse for basis degree " << p
            << " (exact up to degree " << quad.exact_degree() << ")";
        throw NumericalError(msg.str());
    }
    for (int deg = 0; deg <= p; ++deg) {
        std::vector<int> prefix;
        append_degree(vars, deg, prefix, basis.exponents_);
    }
    const int n_mono = static_cast<int>(basis.exponents_.size());

    MatrixXd mono_values(nq, n_mono);
    for (int a = 0; a < nq; ++a) {
        for (int k = 0; k < n_mono; ++k) {
            mono_values(a, k) = monomial(basis.exponents_[static_cast<std::size_t>(k)], quad.node(a));
        }
    }

    basis.values_.resize(nq, n_conf);
    basis.coeffs_ = MatrixXd::Zero(n_mono, n_conf);
    int accepted = 0;
    for (int k = 0; k < n_mono && accepted < n_conf; ++k) {
        VectorXd v = mono_values.col(k);
        VectorXd c = VectorXd::Zero(n_mono);
        c(k) = 1.0;
        const double start = std::sqrt(v.dot(W.asDiagonal() * v));
        for (int pass = 0; pass < 2; ++pass) {
            for (int j = 0; j < accepted; ++j) {
                const double proj = basis.values_.col(j).dot(W.asDiagonal() * v);
                v -= proj * basis.values_.col(j);
                c -= proj * basis.coeffs_.col(j);
            }
        }
        const double norm = std::sqrt(v.dot(W.asDiagonal() * v));
        const int deg = [&] {
            int s = 0;
            for (int e : basis.exponents_[static_cast<std::size_t>(k)]) s += e;
            return s;
        }();
        if (!(norm > 1e-10 * start)) {
            std::ostringstream msg;
            msg << "configuration basis is rank deficient at degree " << deg
                << " (quadrature too coarse)";
            throw NumericalError(msg.str());
        }
        basis.values_.col(accepted) = v / norm;
        basis.coeffs_.col(accepted) = c / norm;
        basis.degrees_.push_back(deg);
        ++accepted;
    }

    basis.gradients_.assign(static_cast<std::size_t>(vars), MatrixXd(nq, n_conf));
    MatrixXd mono_grad(nq, n_mono);
    for (int comp = 0; comp < vars; ++comp) {
        for (int a = 0; a < nq; ++a) {
            for (int k = 0; k < n_mono; ++k) {
                mono_grad(a, k) =
                    monomial_derivative(basis.exponents_[static_cast<std::size_t>(k)], comp, quad.node(a));
            }
        }
        basis.gradients_[static_cast<std::size_t>(comp)] = mono_grad * basis.coeffs_;
    }

    const MatrixXd gram = basis.values_.transpose() * W.asDiagonal() * basis.values_;
    basis.gram_residual_ = (gram - MatrixXd::Identity(n_conf, n_conf)).cwiseAbs().maxCoeff();
    return basis;
}

ConfBasis build_conf_basis(int n_conf, const ApproxMaxwellian& mm, const ConfQuadrature& quad) {
    return build_conf_basis(n_conf, tabulate_approx(mm, quad).values, quad);
}

VectorXd ConfBasis::eval(const Eigen::Ref<const VectorXd>& q) const {
    VectorXd mono(static_cast<Eigen::Index>(exponents_.size()));
    for (std::size_t k = 0; k < exponents_.size(); ++k) {
        mono(static_cast<Eigen::Index>(k)) = monomial(exponents_[k], q);
    }
    return coeffs_.transpose() * mono;
}

MatrixXd ConfBasis::eval_gradient(const Eigen::Ref<const VectorXd>& q) const {
    const int vars = components();
    MatrixXd mono(vars, static_cast<Eigen::Index>(exponents_.size()));
    for (int c = 0; c < vars; ++c) {
        for (std::size_t k = 0; k < exponents_.size(); ++k) {
            mono(c, static_cast<Eigen::Index>(k)) = monomial_derivative(exponents_[k], c, q);
        }
    }
    return mono * coeffs_;
}

} // namespace nsfp
