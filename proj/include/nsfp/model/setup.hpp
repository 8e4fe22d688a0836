#pragma once

#include "nsfp/common.hpp"
#include "nsfp/model/fene.hpp"
#include "nsfp/model/laws.hpp"
#include "nsfp/model/rouse.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace nsfp {

/// Built-in initial densities:
///   constant        rho_0 = mean
///   sine            rho_0 = mean + amplitude sin(2 pi x_1 / L_1)
///   random_fourier  mean + amplitude * (random trigonometric sum scaled into [-1, 1])
struct DensityInit {
    std::string kind = "constant";
    double mean = 1.0;
    double amplitude = 0.0;
    int modes = 4;
};

/// Built-in initial velocities.  `modes` takes the coefficients directly;
/// `random` draws coefficients and rescales them to L2 norm `amplitude`.
struct VelocityInit {
    std::string kind = "zero"; // zero | modes | taylor_green | random
    double amplitude = 0.0;
    std::vector<double> coefficients;
};

/// Built-in initial PDFs (psi-hat, i.e. relative to zeta M):
///   equilibrium  value
///   perturbed    value (1 + amplitude cos(2 pi x_1 / L_1) 2 q_1 q_2 / b_1)
///   random       value (1 + amplitude * random sum of low trig x quadratic-in-q products)
/// `perturbed` goes negative once amplitude > 1.
struct PdfInit {
    std::string kind = "equilibrium";
    double value = 1.0;
    double amplitude = 0.0;
    int modes = 4;
    bool normalize = false; // rescale so that int zeta(rho_0) M psi-hat_0 = 1
};

/// zero, or a steady Taylor-Green body force of the given amplitude.
struct ForcingSpec {
    std::string kind = "zero";
    double amplitude = 0.0;
};

struct FixedPointConfig {
    double tol = 1e-10;
    int max_iter = 30;
    double damping = 1.0;

    void validate() const;
};

/// Everything a run needs, in serializable form.
struct ProblemSetup {
    int dim = 2;
    std::vector<double> lengths{2 * kPi, 2 * kPi};
    double final_time = 0.0;
    double dt = 1e-2;

    std::vector<double> b{4.0};
    std::vector<double> rouse; // K*K row-major; empty selects the classical chain
    MaterialLaws laws;

    double ell = 10.0;          // truncation level
    int m = 4;                  // velocity modes
    int maxwellian_index = 0;   // M^m floor 1/index; 0 keeps the exact M
    int n = 6;                  // PDF modes
    int n_conf = 6;             // configuration functions
    int radial_order = 6;
    int angular_order = 12;
    int grid_n = 0;             // 0 picks the smallest grid that resolves both bases
    int max_index = 8;
    double transport_substep = 0.0; // 0 means dt / 2

    std::string stress_form = "divergence";
    bool drift_uses_mm = false; // debug: replace M by M^m in the drift

    DensityInit density;
    VelocityInit velocity;
    PdfInit pdf;
    ForcingSpec forcing;
    FixedPointConfig fixed_point;
    std::uint64_t seed = 1;

    FeneChain chain() const;
    RouseSystem rouse_system() const;
    /// Throws ConfigError naming the offending key.
    void validate() const;
};

ScalarField initial_density(const ProblemSetup& setup);
using VectorFieldFn = std::function<Vec3(const Vec3&)>;
/// v_0 as a field, or an empty function for kinds given by coefficients (modes, random).
VectorFieldFn initial_velocity_field(const ProblemSetup& setup);
/// psi-hat_0(x, q) before any normalization.
using PdfFn = std::function<double(const Vec3&, const Eigen::Ref<const VectorXd>&)>;
PdfFn initial_pdf(const ProblemSetup& setup);
using ForcingFn = std::function<Vec3(const Vec3&, double)>;
ForcingFn forcing_field(const ProblemSetup& setup);

struct ValidationIssue {
    std::string check;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> violations;
    double rho0_min = 0.0, rho0_max = 0.0;
    double psi0_min = 0.0;
    Vec3 psi0_min_x = Vec3::Zero();
    VectorXd psi0_min_q;
    double mass = 0.0;                 // int zeta(rho_0) M psi-hat_0
    double normalization_defect = 0.0; // mass - 1
    double varrho_max = 0.0;           // zeta_max max_x int M psi-hat_0
    bool borderline_b = false;         // some b_j == 2

    bool ok() const { return violations.empty(); }
};

/// Samples the data assumptions: mu and zeta ranges over rho x varrho, the
/// range of rho_0, nonnegativity of psi-hat_0 and its normalization.
ValidationReport validate_setup(const ProblemSetup& setup, const MaterialLaws& laws, int n_samples);

} // namespace nsfp
