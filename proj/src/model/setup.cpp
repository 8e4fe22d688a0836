#include "nsfp/model/setup.hpp"

#include "nsfp/confspace/maxwellian.hpp"
#include "nsfp/confspace/quadrature.hpp"
#include "nsfp/transport/torus.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace nsfp {

namespace {

Torus make_torus(const ProblemSetup& s) {
    Torus t;
    t.dim = s.dim;
    for (int a = 0; a < s.dim; ++a) t.lengths(a) = s.lengths[static_cast<std::size_t>(a)];
    return t;
}

// Random trigonometric sum scaled so that its values lie in [-1, 1].
struct TrigSum {
    std::vector<Vec3> k;
    std::vector<double> amp, phase;

    TrigSum(const ProblemSetup& s, int count, std::uint64_t salt) {
        std::mt19937_64 gen(s.seed ^ salt);
        std::uniform_int_distribution<int> idx(-2, 2);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        double total = 0.0;
        for (int j = 0; j < count; ++j) {
            Vec3 kv = Vec3::Zero();
            while (kv.isZero()) {
                for (int a = 0; a < s.dim; ++a) {
                    kv(a) = 2 * kPi * idx(gen) / s.lengths[static_cast<std::size_t>(a)];
                }
            }
            k.push_back(kv);
            amp.push_back(unit(gen));
            phase.push_back(kPi * (unit(gen) + 1.0));
            total += std::abs(amp.back());
        }
        if (total > 0) {
            for (double& a : amp) a /= total;
        }
    }

    double term(std::size_t j, const Vec3& x) const { return amp[j] * std::cos(k[j].dot(x) + phase[j]); }
    double operator()(const Vec3& x) const {
        double v = 0.0;
        for (std::size_t j = 0; j < k.size(); ++j) v += term(j, x);
        return v;
    }
};

void require(bool ok, const std::string& key, const std::string& what) {
    if (!ok) throw ConfigError(key, what);
}

} // namespace

void FixedPointConfig::validate() const {
    require(tol > 0, "fixed_point.tol", "tolerance must be positive");
    require(max_iter >= 1, "fixed_point.max_iter", "at least one iteration is required");
    require(damping > 0 && damping <= 1, "fixed_point.damping", "damping must lie in (0, 1]");
}

FeneChain ProblemSetup::chain() const { return FeneChain(dim, b); }

RouseSystem ProblemSetup::rouse_system() const {
    const int K = static_cast<int>(b.size());
    if (rouse.empty()) return RouseSystem::classical(K);
    MatrixXd a(K, K);
    for (int i = 0; i < K; ++i) {
        for (int j = 0; j < K; ++j) a(i, j) = rouse[static_cast<std::size_t>(i * K + j)];
    }
    return RouseSystem(a);
}

void ProblemSetup::validate() const {
    require(dim == 2 || dim == 3, "dim", "must be 2 or 3");
    require(static_cast<int>(lengths.size()) == dim, "lengths", "needs one side length per dimension");
    for (double L : lengths) require(L > 0, "lengths", "side lengths must be positive");
    require(final_time >= 0, "final_time", "must be nonnegative");
    require(dt > 0, "dt", "must be positive");
    require(!b.empty() && b.size() <= 2, "chain.b", "one or two springs are supported");
    for (double bj : b) {
        require(bj >= 2, "chain.b", "FENE extensibility violates the b > 2 constraint (got " + std::to_string(bj) + ")");
    }
    const std::size_t K = b.size();
    require(rouse.empty() || rouse.size() == K * K, "chain.rouse", "must hold K*K entries");
    try {
        (void)rouse_system();
    } catch (const std::exception& e) {
        throw ConfigError("chain.rouse", e.what());
    }
    require(laws.k >= 0, "laws.k", "must be nonnegative");
    require(laws.rho_min > 0 && laws.rho_min <= laws.rho_max, "laws.rho_min", "need 0 < rho_min <= rho_max");
    require(laws.mu_min > 0 && laws.mu_min <= laws.mu_max, "laws.mu_min", "need 0 < mu_min <= mu_max");
    require(laws.zeta_min > 0 && laws.zeta_min <= laws.zeta_max, "laws.zeta_min",
            "need 0 < zeta_min <= zeta_max");
    require(ell > 0, "levels.ell", "truncation level must be positive");
    require(m >= 1, "levels.m", "at least one velocity mode");
    require(maxwellian_index >= 0, "levels.maxwellian_index", "must be nonnegative");
    require(n >= 1, "levels.n", "at least one PDF mode");
    require(n_conf >= 1, "levels.n_conf", "at least one configuration function");
    require(radial_order >= 1, "quadrature.radial_order", "must be positive");
    require(angular_order >= 1, "quadrature.angular_order", "must be positive");
    require(grid_n >= 0, "quadrature.grid_n", "must be nonnegative");
    require(max_index >= 1, "quadrature.max_index", "must be positive");
    require(transport_substep >= 0, "quadrature.transport_substep", "must be nonnegative");
    require(stress_form == "kramers" || stress_form == "divergence" || stress_form == "gradient",
            "stress_form", "must be kramers, divergence or gradient");
    const std::string& dk = density.kind;
    require(dk == "constant" || dk == "sine" || dk == "random_fourier", "initial.density.kind",
            "unknown kind '" + dk + "'");
    require(density.modes >= 1, "initial.density.modes", "must be positive");
    const std::string& vk = velocity.kind;
    require(vk == "zero" || vk == "modes" || vk == "taylor_green" || vk == "random", "initial.velocity.kind",
            "unknown kind '" + vk + "'");
    require(vk != "modes" || static_cast<int>(velocity.coefficients.size()) <= m,
            "initial.velocity.coefficients", "more coefficients than velocity modes");
    require(vk != "taylor_green" || dim == 2, "initial.velocity.kind", "taylor_green needs dim = 2");
    const std::string& pk = pdf.kind;
    require(pk == "equilibrium" || pk == "perturbed" || pk == "random", "initial.pdf.kind",
            "unknown kind '" + pk + "'");
    require(pdf.modes >= 1, "initial.pdf.modes", "must be positive");
    require(forcing.kind == "zero" || forcing.kind == "taylor_green", "forcing.kind",
            "unknown kind '" + forcing.kind + "'");
    require(forcing.kind != "taylor_green" || dim == 2, "forcing.kind", "taylor_green needs dim = 2");
    fixed_point.validate();
}

ScalarField initial_density(const ProblemSetup& s) {
    const double mean = s.density.mean;
    const double amp = s.density.amplitude;
    if (s.density.kind == "sine") {
        const double k = 2 * kPi / s.lengths[0];
        return [=](const Vec3& x) { return mean + amp * std::sin(k * x(0)); };
    }
    if (s.density.kind == "random_fourier") {
        const TrigSum sum(s, s.density.modes, 0x5eedULL);
        return [=](const Vec3& x) { return mean + amp * sum(x); };
    }
    return [=](const Vec3&) { return mean; };
}

VectorFieldFn initial_velocity_field(const ProblemSetup& s) {
    if (s.velocity.kind == "zero") return [](const Vec3&) { return Vec3::Zero().eval(); };
    if (s.velocity.kind == "taylor_green") {
        const double a = s.velocity.amplitude;
        const double kx = 2 * kPi / s.lengths[0], ky = 2 * kPi / s.lengths[1];
        return [=](const Vec3& x) {
            // Scaled so the field stays divergence free on a non-square box.
            return Vec3(a * ky * std::sin(kx * x(0)) * std::cos(ky * x(1)),
                        -a * kx * std::cos(kx * x(0)) * std::sin(ky * x(1)), 0.0);
        };
    }
    return {};
}

PdfFn initial_pdf(const ProblemSetup& s) {
    const double value = s.pdf.value;
    const double amp = s.pdf.amplitude;
    const int d = s.dim;
    const double b1 = s.b[0];
    if (s.pdf.kind == "perturbed") {
        const double k = 2 * kPi / s.lengths[0];
        return [=](const Vec3& x, const Eigen::Ref<const VectorXd>& q) {
            return value * (1.0 + amp * std::cos(k * x(0)) * 2.0 * q(0) * q(1) / b1);
        };
    }
    if (s.pdf.kind == "random") {
        const TrigSum sum(s, s.pdf.modes, 0xf00dULL);
        std::mt19937_64 gen(s.seed ^ 0xbeefULL);
        std::uniform_int_distribution<int> pick(0, 2);
        std::vector<int> shape;
        for (std::size_t j = 0; j < sum.k.size(); ++j) shape.push_back(pick(gen));
        return [=](const Vec3& x, const Eigen::Ref<const VectorXd>& q) {
            // Each shape is bounded by 1 in magnitude on the first ball.
            const double r2 = q.head(d).squaredNorm() / b1;
            double v = 0.0;
            for (std::size_t j = 0; j < sum.k.size(); ++j) {
                double p = 0.0;
                switch (shape[j]) {
                case 0: p = 2.0 * q(0) * q(1) / b1; break;
                case 1: p = 2.0 * r2 - 1.0; break;
                default: p = (q(0) * q(0) - q(1) * q(1)) / b1; break;
                }
                v += sum.term(j, x) * p;
            }
            return value * (1.0 + amp * v);
        };
    }
    return [=](const Vec3&, const Eigen::Ref<const VectorXd>&) { return value; };
}

ForcingFn forcing_field(const ProblemSetup& s) {
    if (s.forcing.kind == "taylor_green") {
        const double a = s.forcing.amplitude;
        const double kx = 2 * kPi / s.lengths[0], ky = 2 * kPi / s.lengths[1];
        return [=](const Vec3& x, double) {
            return Vec3(a * ky * std::sin(kx * x(0)) * std::cos(ky * x(1)),
                        -a * kx * std::cos(kx * x(0)) * std::sin(ky * x(1)), 0.0);
        };
    }
    return [](const Vec3&, double) { return Vec3::Zero().eval(); };
}

ValidationReport validate_setup(const ProblemSetup& setup, const MaterialLaws& laws, int n_samples) {
    ValidationReport rep;
    auto flag = [&](const std::string& check, const std::string& detail) {
        rep.violations.push_back({check, detail});
    };
    const int ns = std::max(n_samples, 2);

    const FeneChain chain = setup.chain();
    for (double bj : setup.b) rep.borderline_b = rep.borderline_b || bj == 2.0;
    const Torus torus = make_torus(setup);
    const TorusGrid grid(torus, setup.grid_n > 0 ? setup.grid_n : 16);
    const ConfQuadrature quad(chain, setup.radial_order, setup.angular_order);
    const Maxwellian maxw(chain);
    const NodalWeight mw = tabulate_maxwellian(maxw, quad);

    const ScalarField rho0 = initial_density(setup);
    const PdfFn psi0 = initial_pdf(setup);
    rep.rho0_min = std::numeric_limits<double>::infinity();
    rep.rho0_max = -rep.rho0_min;
    rep.psi0_min = std::numeric_limits<double>::infinity();
    double lambda_max = 0.0;
    for (int p = 0; p < grid.size(); ++p) {
        const Vec3& x = grid.point(p);
        const double r = rho0(x);
        if (r < rep.rho0_min) rep.rho0_min = r;
        if (r > rep.rho0_max) rep.rho0_max = r;
        double lam = 0.0;
        for (int a = 0; a < quad.size(); ++a) {
            const double v = psi0(x, quad.node(a));
            if (v < rep.psi0_min) {
                rep.psi0_min = v;
                rep.psi0_min_x = x;
                rep.psi0_min_q = quad.node(a);
            }
            lam += quad.weights()(a) * mw.values(a) * v;
        }
        lambda_max = std::max(lambda_max, lam);
        rep.mass += grid.weight() * laws.drag(r) * lam;
    }
    rep.normalization_defect = rep.mass - 1.0;
    rep.varrho_max = laws.zeta_max * lambda_max;

    std::ostringstream msg;
    if (rep.rho0_min < laws.rho_min || rep.rho0_max > laws.rho_max) {
        msg << "rho_0 takes values in [" << rep.rho0_min << ", " << rep.rho0_max << "], outside ["
            << laws.rho_min << ", " << laws.rho_max << "]";
        flag("rho0_range", msg.str());
        msg.str("");
    }
    if (rep.psi0_min < 0) {
        msg << "psi-hat_0 = " << rep.psi0_min << " at x = (" << rep.psi0_min_x(0) << ", "
            << rep.psi0_min_x(1) << ", " << rep.psi0_min_x(2) << "), q = (";
        for (int c = 0; c < rep.psi0_min_q.size(); ++c) msg << (c ? ", " : "") << rep.psi0_min_q(c);
        msg << ")";
        flag("psi0_nonnegative", msg.str());
        msg.str("");
    }

    // mu over [rho_min, rho_max] x [0, varrho_max] and zeta over [rho_min, rho_max].
    const double pn_max = std::max(rep.varrho_max, 1.0);
    bool mu_bad = false, zeta_bad = false;
    for (int i = 0; i < ns && !(mu_bad && zeta_bad); ++i) {
        const double r = laws.rho_min + (laws.rho_max - laws.rho_min) * i / (ns - 1);
        const double z = laws.drag(r);
        if (!zeta_bad && !(z >= laws.zeta_min && z <= laws.zeta_max)) {
            msg << "zeta(" << r << ") = " << z << " outside [" << laws.zeta_min << ", " << laws.zeta_max << "]";
            flag("zeta_range", msg.str());
            msg.str("");
            zeta_bad = true;
        }
        for (int j = 0; j < ns && !mu_bad; ++j) {
            const double pn = pn_max * j / (ns - 1);
            const double mu = laws.viscosity(r, pn);
            if (!(mu >= laws.mu_min && mu <= laws.mu_max)) {
                msg << "mu(" << r << ", " << pn << ") = " << mu << " outside [" << laws.mu_min << ", "
                    << laws.mu_max << "]";
                flag("mu_range", msg.str());
                msg.str("");
                mu_bad = true;
            }
        }
    }
    return rep;
}

} // namespace nsfp
