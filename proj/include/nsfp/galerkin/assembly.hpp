#pragma once

#include "nsfp/common.hpp"
#include "nsfp/confspace/maxwellian.hpp"
#include "nsfp/confspace/quadrature.hpp"
#include "nsfp/galerkin/pdf_basis.hpp"
#include "nsfp/galerkin/velocity_basis.hpp"
#include "nsfp/model/laws.hpp"
#include "nsfp/model/rouse.hpp"
#include "nsfp/truncation/truncation.hpp"

#include <memory>

namespace nsfp {

/// Velocity ODE  M dc/dt = A c + B.  Rows are test modes, columns trial modes.
struct VelocitySystem {
    MatrixXd M;
    MatrixXd A;
    VectorXd B;
    MatrixXd convection; // int rho (u.grad) w_i . w_j, stored [j, i]
    MatrixXd viscous;    // int mu D(w_i):D(w_j)
};

/// Fields on the spatial grid that the velocity assembly reads.
struct VelocityInputs {
    VectorXd rho;
    MatrixXd u;              // grid x 3, convecting velocity
    VectorXd varrho;         // polymer number density, feeds mu(rho, varrho)
    std::vector<Mat3> tau;   // extra stress
    MatrixXd f;              // grid x 3, body force
};

VelocitySystem assemble_velocity_system(const VelocityBasis& basis, const VelocityInputs& in,
                                        const MaterialLaws& laws);

/// PDF ODE  d/dt (N d) = P d + R  in the conservative form: the left side is
/// the time derivative of int M^m zeta psi-hat phi_i.
struct FpSystem {
    MatrixXd N;
    MatrixXd P;
    VectorXd R;
};

struct FpInputs {
    VectorXd zeta;               // zeta(rho) on the grid
    MatrixXd u;                  // grid x 3
    std::vector<Mat3> grad_u;    // per grid point, grad(a, b) = d u_a / d x_b
    VectorXd xi;                 // PDF coefficients feeding the truncated drift
};

/// Configuration data shared by every PDF assembly: the M^m weight for the mass
/// and diffusion terms and the drift weight (M unless forced to M^m).
struct FpStatics {
    std::shared_ptr<const ConfQuadrature> quad;
    VectorXd mm;     // M^m at the q nodes
    VectorXd drift;  // M (or M^m) at the q nodes
    RouseSystem rouse = RouseSystem::classical(1);
};

FpSystem assemble_fp_system(const PdfBasis& basis, const FpStatics& statics, const FpInputs& in,
                            const CutoffFamily& cutoff);

/// Mass-only part N (used at window endpoints).
MatrixXd fp_mass_matrix(const PdfBasis& basis, const FpStatics& statics, const VectorXd& zeta);

struct PolymerDensity {
    VectorXd varrho;
    long clamped = 0;
    long total = 0;
    double clamp_fraction() const { return total > 0 ? static_cast<double>(clamped) / total : 0.0; }
};

/// varrho(x) = zeta(rho(x)) int_D M^m [psi-hat]_+ dq.
PolymerDensity polymer_number_density(const PdfBasis& basis, const FpStatics& statics,
                                      const VectorXd& zeta, const VectorXd& d);

} // namespace nsfp
