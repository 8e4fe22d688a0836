#pragma once

#include "nsfp/common.hpp"
#include "nsfp/solver/solver.hpp"

#include <string>
#include <vector>

namespace nsfp {

/// Energy functional and dissipation rates at one time level.  Integrals in q
/// carry the M^m weight of the discrete scheme (exact M when the Maxwellian
/// index is 0).  The time-integrated residual is filled in by the run loop.
struct EnergyReport {
    double time = 0.0;
    double kinetic = 0.0;      // 1/2 int rho |v|^2
    double entropy = 0.0;      // k int M zeta F(psi-hat)
    double viscous = 0.0;      // int mu |D v|^2
    double x_dissipation = 0.0; // 4k int M |grad_x sqrt(psi-hat)|^2
    double q_dissipation = 0.0; // 4k int M A(grad_q sqrt):grad_q sqrt
    double q_gradient = 0.0;    // 4k int M |grad_q sqrt(psi-hat)|^2, for the Rouse sandwich
    double forcing_work = 0.0;  // int rho f . v
    double residual = 0.0;
    long floored = 0;           // nodes with psi-hat <= 1e-12, left out of the sqrt terms

    double energy() const { return kinetic + entropy; }
    double dissipation() const { return viscous + x_dissipation + q_dissipation; }
};

EnergyReport energy(const Discretization& disc, const SimState& state);

/// Pointwise quantities the invariant suite watches.
struct StateSummary {
    double rho_min = 0.0, rho_max = 0.0;
    Vec3 rho_min_at = Vec3::Zero(), rho_max_at = Vec3::Zero();
    double fluid_mass = 0.0;   // int rho
    double pdf_mass = 0.0;     // int M^m zeta psi-hat
    double psi_min = 0.0;
    double clamp_fraction = 0.0;
    double lambda_max = 0.0;   // max_x int M^m psi-hat dq
    double tau_max = 0.0;      // max |tau|
};

StateSummary summarize(const Discretization& disc, const SimState& state);

/// The two sides of the stress/drift cancellation behind the energy identity:
///   stress_power = int tau : grad v
///   drift_power  = k int M zeta Gamma_l(psi-hat) ((grad v) q) . grad_q psi-hat
/// (the latter equals k int M zeta Lambda_l(psi-hat) ((grad v) q) . grad_q log psi-hat).
struct Cancellation {
    double stress_power = 0.0;
    double drift_power = 0.0;
    double defect() const { return std::abs(stress_power - drift_power); }
};

Cancellation cancellation(const Discretization& disc, const SimState& state);

/// Max deviation between the kramers, divergence and gradient stress forms.
double stress_form_consistency(const Discretization& disc, const SimState& state);

/// sup over shifts h = j * spacing of h^{-gamma} ||u(. + h) - u||_{L2(0, T-h; L2)},
/// with the time integral by the trapezoid rule and ||x||^2 = sum w_i x_i^2.
double nikolskii_norm(const std::vector<VectorXd>& series, double spacing, double gamma,
                      const VectorXd& weights = VectorXd());

/// One row of the per-step record the run loop writes.
struct StepRecord {
    EnergyReport report;
    StateSummary summary;
    Cancellation cancel;
    int iterations = 0;
    double mass_min_eig = 0.0;
};

struct InvariantTolerances {
    double density = 0.0;       // slack on [rho_min, rho_max] and on the range of rho_0
    double fluid_mass = 1e-6;
    double pdf_mass = 1e-8;
    double max_principle = 1e-6;
    double energy_slack = 1e-8; // per step, only checked when there is no forcing
    double cancellation = 1e-8;
    double mass_eig = 1e-10;    // relative slack on lambda_min(M) >= rho_min
};

struct InvariantRow {
    std::string name;
    double worst = 0.0;
    double tolerance = 0.0;
    double time = 0.0;
    std::string location;
    bool pass = true;
};

struct InvariantReport {
    std::vector<InvariantRow> rows;
    bool pass() const {
        for (const auto& r : rows) {
            if (!r.pass) return false;
        }
        return true;
    }
    std::string table() const;
};

/// Checks a recorded trajectory.  psi-hat negativity is reported as its
/// minimum and clamp fraction but does not fail the suite.
InvariantReport invariant_suite(const std::vector<StepRecord>& records, const MaterialLaws& laws,
                                double rho0_min, double rho0_max, bool forced,
                                const InvariantTolerances& tol = {});

} // namespace nsfp
