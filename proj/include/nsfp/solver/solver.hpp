#pragma once

#include "nsfp/common.hpp"
#include "nsfp/solver/discretization.hpp"

#include <memory>
#include <vector>

namespace nsfp {

/// rho, v, psi-hat at one time level.  rho is carried by the backward flow map.
struct SimState {
    double time = 0.0;
    VectorXd c;      // velocity coefficients
    VectorXd d;      // PDF coefficients
    FlowMap map;
    VectorXd rho;    // rho_0 o Phi on the grid
    VectorXd varrho; // positive-part polymer number density
    long clamped = 0;
};

/// Projections of the initial data: v_0 onto the velocity modes and
/// T_l(psi-hat_0 M / M^m) onto the PDF basis in L2_{M^m}.
SimState initial_state(const Discretization& disc);

/// psi-hat_0 coefficients alone (rescaled when pdf.normalize is set).
VectorXd initial_pdf_coefficients(const Discretization& disc);

/// Polymer stress tau(zeta, psi-hat) from the PDF coefficients d, in the
/// configured form, with T_l applied and no positive-part clamp.
StressField polymer_stress(const Discretization& disc, const VectorXd& zeta, const VectorXd& d);

struct ThetaOptions {
    double forcing_scale = 1.0;
    bool freeze_stress = false; // use `stress` below instead of the xi-built one
    std::vector<Mat3> stress;
};

/// Output of one evaluation of the coupling map over the window [t_n, t_n + dt].
struct ThetaResult {
    VectorXd c;
    VectorXd d;
    FlowMap map;         // Phi at the window end
    VectorXd rho;        // at the window end
    VectorXd rho_mid;
    MatrixXd mass_mid;   // velocity mass matrix at the midpoint
    MatrixXd pdf_mass;   // N at the window end
};

/// Theta(u, xi): transport rho with the velocity interpolated linearly
/// between state.c and u_next, build varrho and tau from the midpoint of
/// state.d and xi_next, and advance both linear systems by Crank-Nicolson
/// with matrices frozen at the window midpoint.
ThetaResult theta_map(const Discretization& disc, const SimState& state, double dt,
                      const VectorXd& u_next, const VectorXd& xi_next,
                      const ThetaOptions& opts = {});

/// Velocity blocks at the given fields (the pieces theta_map freezes at the midpoint).
VelocitySystem velocity_blocks(const Discretization& disc, const VectorXd& rho, const VectorXd& u,
                               const VectorXd& xi, double t, const ThetaOptions& opts = {});

struct StepInfo {
    int iterations = 0;
    std::vector<double> residuals;
    double mass_min_eig = 0.0;
    double pdf_mass_min_eig = 0.0;
};

/// One damped Picard step.  Throws NonConvergenceError when the iteration
/// budget runs out or the iterates blow up.
SimState step(const Discretization& disc, const SimState& state, double dt, const FixedPointConfig& fp,
              StepInfo* info = nullptr);

} // namespace nsfp
