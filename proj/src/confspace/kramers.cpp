#include "nsfp/confspace/kramers.hpp"

#include <algorithm>

namespace nsfp {

StressForm parse_stress_form(const std::string& name) {
    if (name == "kramers") return StressForm::kramers;
    if (name == "divergence") return StressForm::divergence;
    if (name == "gradient") return StressForm::gradient;
    throw DomainError("unknown stress form '" + name + "' (expected kramers, divergence or gradient)");
}

std::string stress_form_name(StressForm form) {
    switch (form) {
    case StressForm::kramers:
        return "kramers";
    case StressForm::divergence:
        return "divergence";
    case StressForm::gradient:
        return "gradient";
    }
    return "kramers";
}

StressField kramers_stress(const FeneChain& chain, double k, const ConfQuadrature& quad,
                           const NodalWeight& weight, const StressInput& input,
                           const CutoffFamily& cutoff, StressForm form, bool clamp_negative) {
    const int d = chain.dim();
    const int K = chain.springs();
    const int nq = quad.size();
    const auto nx = input.psi.rows();
    if (input.psi.cols() != nq || input.zeta.size() != nx) {
        throw DomainError("kramers_stress: field shapes do not match the quadrature");
    }
    if (form == StressForm::gradient && static_cast<int>(input.grad_psi.size()) != d * K) {
        throw DomainError("kramers_stress: gradient form needs the q-gradient of psi-hat");
    }

    // Per-node tensors, flattened row-major into d*d columns.
    MatrixXd node_tensor = MatrixXd::Zero(nq, d * d);
    VectorXd node_trace(nq);
    for (int a = 0; a < nq; ++a) {
        const double wa = quad.weights()(a);
        const auto q = quad.node(a);
        node_trace(a) = K * wa * weight.values(a);
        for (int j = 0; j < K; ++j) {
            const double coef = form == StressForm::kramers
                                    ? wa * weight.values(a) * weight.uprime(a, j)
                                    : wa * weight.decay(a, j);
            for (int r = 0; r < d; ++r) {
                for (int c = 0; c < d; ++c) {
                    node_tensor(a, r * d + c) += coef * q(j * d + r) * q(j * d + c);
                }
            }
        }
    }

    StressField out;
    out.tau.assign(static_cast<std::size_t>(nx), Mat3::Zero());
    for (Eigen::Index x = 0; x < nx; ++x) {
        Mat3& tau = out.tau[static_cast<std::size_t>(x)];
        if (form == StressForm::gradient) {
            for (int a = 0; a < nq; ++a) {
                const double p = input.psi(x, a);
                if (p < 0.0) {
                    ++out.clamped;
                    if (clamp_negative) continue;
                }
                const double g = quad.weights()(a) * weight.values(a) * cutoff.gamma(p);
                const auto q = quad.node(a);
                for (int j = 0; j < K; ++j) {
                    for (int r = 0; r < d; ++r) {
                        const double dpsi = input.grad_psi[static_cast<std::size_t>(j * d + r)](x, a);
                        for (int c = 0; c < d; ++c) tau(r, c) += g * dpsi * q(j * d + c);
                    }
                }
            }
        } else {
            double trace = 0.0;
            Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(d * d);
            for (int a = 0; a < nq; ++a) {
                double p = input.psi(x, a);
                if (p < 0.0) {
                    ++out.clamped;
                    if (clamp_negative) p = 0.0;
                }
                const double t = cutoff.t(p);
                trace += t * node_trace(a);
                acc += t * node_tensor.row(a);
            }
            // grad W = -decay q, so the divergence form also reduces to acc - trace I.
            for (int r = 0; r < d; ++r) {
                for (int c = 0; c < d; ++c) tau(r, c) = acc(r * d + c);
                tau(r, r) -= trace;
            }
        }
        tau *= k * input.zeta(x);
    }
    return out;
}

double stress_form_deviation(const FeneChain& chain, double k, const ConfQuadrature& quad,
                             const NodalWeight& weight, const StressInput& input,
                             const CutoffFamily& cutoff) {
    const StressForm forms[] = {StressForm::kramers, StressForm::divergence, StressForm::gradient};
    std::vector<StressField> fields;
    for (StressForm f : forms) fields.push_back(kramers_stress(chain, k, quad, weight, input, cutoff, f));
    double dev = 0.0;
    for (std::size_t a = 0; a < fields.size(); ++a) {
        for (std::size_t b = a + 1; b < fields.size(); ++b) {
            for (std::size_t x = 0; x < fields[a].tau.size(); ++x) {
                dev = std::max(dev, (fields[a].tau[x] - fields[b].tau[x]).cwiseAbs().maxCoeff());
            }
        }
    }
    return dev;
}

} // namespace nsfp
