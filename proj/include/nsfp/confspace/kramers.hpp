#pragma once

#include "nsfp/common.hpp"
#include "nsfp/confspace/maxwellian.hpp"
#include "nsfp/confspace/quadrature.hpp"
#include "nsfp/truncation/truncation.hpp"

#include <string>

namespace nsfp {

/// The three equivalent expressions of the polymeric extra stress:
///   kramers:    k zeta [ sum_j int W U'_j T(psi) q^j q^j^T - K int W T(psi) I ]
///   divergence: -k zeta [ K int W T(psi) I + sum_j int T(psi) grad_{q^j} W (x) q^j ]
///   gradient:   k zeta sum_j int W Gamma(psi) grad_{q^j} psi (x) q^j
/// with T = T_l, Gamma = Gamma_l and W the tabulated Maxwellian.
enum class StressForm { kramers, divergence, gradient };

StressForm parse_stress_form(const std::string& name);
std::string stress_form_name(StressForm form);

/// psi-hat and (for the gradient form) its q-gradient on an x-node by q-node grid.
struct StressInput {
    VectorXd zeta;                     // zeta(rho) at each x node
    MatrixXd psi;                      // rows: x nodes, cols: q nodes
    std::vector<MatrixXd> grad_psi;    // one matrix per q component, same shape as psi
};

struct StressField {
    std::vector<Mat3> tau; // per x node, unused rows/cols zero when d = 2
    long clamped = 0;      // negative psi-hat values set to zero
};

/// Evaluate the stress at every x node.  With `clamp_negative`, psi-hat is
/// replaced by its positive part in every form (the gradient form drops the
/// nodes where psi-hat < 0) and the clamped nodes are counted.
StressField kramers_stress(const FeneChain& chain, double k, const ConfQuadrature& quad,
                           const NodalWeight& weight, const StressInput& input,
                           const CutoffFamily& cutoff, StressForm form,
                           bool clamp_negative = true);

/// Max |tau_a - tau_b| over forms and x nodes.
double stress_form_deviation(const FeneChain& chain, double k, const ConfQuadrature& quad,
                             const NodalWeight& weight, const StressInput& input,
                             const CutoffFamily& cutoff);

} // namespace nsfp
