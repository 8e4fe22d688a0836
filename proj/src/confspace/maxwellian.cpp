#include "nsfp/confspace/maxwellian.hpp"

#include "nsfp/model/fene.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace nsfp {

double partition_function(double b, int dim) {
    if (!(b >= 2.0)) {
        std::ostringstream msg;
        msg << "partition function: b = " << b << " violates the b > 2 constraint";
        throw DomainError(msg.str());
    }
    if (dim != 2 && dim != 3) throw DomainError("partition function: dimension must be 2 or 3");
    // In s = |q|^2/b the integrand is (1-s)^{b/2} s^{(d-2)/2} (b^{d/2}/2) |S^{d-1}|.
    // The rule carries (1-s)^{b/2-1}, leaving the linear factor (1-s).
    const double alpha = 0.5 * b - 1.0;
    const double beta = 0.5 * (dim - 2);
    const GaussRule rule = gauss_jacobi(4, alpha, beta);
    double radial = 0.0;
    for (int i = 0; i < rule.nodes.size(); ++i) {
        radial += rule.weights(i) * (1.0 - rule.nodes(i));
    }
    const double sphere = dim == 2 ? 2.0 * kPi : 4.0 * kPi;
    return 0.5 * std::pow(b, 0.5 * dim) * sphere * radial;
}

Maxwellian::Maxwellian(FeneChain chain) : chain_(std::move(chain)) {
    for (int j = 0; j < chain_.springs(); ++j) {
        z_.push_back(partition_function(chain_.b(j), chain_.dim()));
    }
}

namespace {

double boundary_gap(double r2, double b) {
    const double gap = 1.0 - r2 / b;
    if (gap < -1e-14) {
        std::ostringstream msg;
        msg << "configuration outside D: |q|^2 = " << r2 << " > b = " << b;
        throw DomainError(msg.str());
    }
    return std::max(gap, 0.0);
}

} // namespace

double Maxwellian::spring_factor(int j, double r2) const {
    const double b = chain_.b(j);
    return std::pow(boundary_gap(r2, b), 0.5 * b) / partition(j);
}

double Maxwellian::eval(const Eigen::Ref<const VectorXd>& q) const {
    const int d = chain_.dim();
    double value = 1.0;
    for (int j = 0; j < chain_.springs(); ++j) {
        value *= spring_factor(j, q.segment(j * d, d).squaredNorm());
    }
    return value;
}

double Maxwellian::log_eval(const Eigen::Ref<const VectorXd>& q) const {
    const int d = chain_.dim();
    double value = 0.0;
    for (int j = 0; j < chain_.springs(); ++j) {
        const double b = chain_.b(j);
        const double gap = boundary_gap(q.segment(j * d, d).squaredNorm(), b);
        value += 0.5 * b * std::log(gap) - std::log(partition(j));
    }
    return value;
}

VectorXd Maxwellian::gradient(const Eigen::Ref<const VectorXd>& q) const {
    const int d = chain_.dim();
    const int K = chain_.springs();
    VectorXd factors(K);
    for (int j = 0; j < K; ++j) factors(j) = spring_factor(j, q.segment(j * d, d).squaredNorm());
    VectorXd grad(d * K);
    for (int j = 0; j < K; ++j) {
        double others = 1.0;
        for (int i = 0; i < K; ++i) {
            if (i != j) others *= factors(i);
        }
        const double b = chain_.b(j);
        const double gap = boundary_gap(q.segment(j * d, d).squaredNorm(), b);
        // d/dq (1 - |q|^2/b)^{b/2} = -(1 - |q|^2/b)^{b/2-1} q
        const double decay = others * std::pow(gap, 0.5 * b - 1.0) / partition(j);
        grad.segment(j * d, d) = -decay * q.segment(j * d, d);
    }
    return grad;
}

double maxwellian_eval(const FeneChain& chain, const Eigen::Ref<const VectorXd>& q) {
    if (q.size() != chain.dim() * chain.springs()) {
        throw DomainError("maxwellian_eval: configuration has the wrong number of components");
    }
    return Maxwellian(chain).eval(q);
}

ApproxMaxwellian::ApproxMaxwellian(Maxwellian maxwellian, int index)
    : maxwellian_(std::move(maxwellian)), index_(index) {
    if (index < 0) throw DomainError("approximate Maxwellian index must be nonnegative");
}

NodalWeight tabulate_maxwellian(const Maxwellian& maxwellian, const ConfQuadrature& quad) {
    const FeneChain& chain = maxwellian.chain();
    const int K = chain.springs();
    const int n = quad.size();
    NodalWeight w;
    w.values.resize(n);
    w.decay.resize(n, K);
    w.uprime.resize(n, K);
    for (int a = 0; a < n; ++a) {
        VectorXd factors(K);
        for (int j = 0; j < K; ++j) {
            factors(j) = maxwellian.spring_factor(j, quad.squared_radii()(a, j));
        }
        w.values(a) = factors.prod();
        for (int j = 0; j < K; ++j) {
            const double b = chain.b(j);
            const double r2 = quad.squared_radii()(a, j);
            double others = 1.0;
            for (int i = 0; i < K; ++i) {
                if (i != j) others *= factors(i);
            }
            w.decay(a, j) = others * std::pow(1.0 - r2 / b, 0.5 * b - 1.0) / maxwellian.partition(j);
            w.uprime(a, j) = fene_potential_deriv(0.5 * r2, b);
        }
    }
    return w;
}

NodalWeight tabulate_approx(const ApproxMaxwellian& approx, const ConfQuadrature& quad) {
    NodalWeight w = tabulate_maxwellian(approx.maxwellian(), quad);
    for (int a = 0; a < quad.size(); ++a) {
        const double m = w.values(a);
        w.values(a) = approx.value(m);
        // M^m is flat (equal to the floor) wherever M sits below it.
        if (m <= approx.floor()) w.decay.row(a).setZero();
    }
    return w;
}

FeneBoundConstants sample_fene_constants(double b, int samples) {
    if (samples < 2) throw DomainError("sample_fene_constants needs at least two samples");
    const double R = std::sqrt(b);
    FeneBoundConstants c{std::numeric_limits<double>::infinity(), 0.0};
    for (int i = 0; i < samples; ++i) {
        const double r = R * i / samples;
        const double v = (R - r) * fene_potential_deriv(0.5 * r * r, b);
        c.c3 = std::min(c.c3, v);
        c.c4 = std::max(c.c4, v);
    }
    return c;
}

} // namespace nsfp
