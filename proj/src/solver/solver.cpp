#include "nsfp/solver/solver.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <sstream>

namespace nsfp {

namespace {

VectorXd initial_velocity_coefficients(const Discretization& disc) {
    const ProblemSetup& s = disc.setup();
    const VelocityBasis& vb = disc.velocity();
    VectorXd c = VectorXd::Zero(vb.size());
    if (s.velocity.kind == "modes") {
        for (std::size_t i = 0; i < s.velocity.coefficients.size(); ++i) {
            c(static_cast<Eigen::Index>(i)) = s.velocity.coefficients[i];
        }
        return c;
    }
    if (s.velocity.kind == "random") {
        std::mt19937_64 gen(s.seed ^ 0xc0ffeeULL);
        std::normal_distribution<double> normal(0.0, 1.0);
        for (int i = 0; i < c.size(); ++i) c(i) = normal(gen);
        const double norm = c.norm();
        if (norm > 0) c *= s.velocity.amplitude / norm;
        return c;
    }
    const VectorFieldFn v0 = initial_velocity_field(s);
    const TorusGrid& g = disc.grid();
    MatrixXd v(g.size(), 3);
    for (int p = 0; p < g.size(); ++p) v.row(p) = v0(g.point(p)).transpose();
    for (int a = 0; a < disc.torus().dim; ++a) c += g.weight() * vb.values(a).transpose() * v.col(a);
    return c;
}

double max_abs(const VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

double min_eigenvalue(const MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

VectorXd solve_checked(const MatrixXd& lhs, const VectorXd& rhs, const MatrixXd& mass, const char* what) {
    Eigen::PartialPivLU<MatrixXd> lu(lhs);
    VectorXd x = lu.solve(rhs);
    if (!x.allFinite()) {
        std::ostringstream msg;
        msg << what << ": singular system (smallest mass-matrix eigenvalue " << min_eigenvalue(mass) << ")";
        throw NumericalError(msg.str());
    }
    return x;
}

} // namespace

VectorXd initial_pdf_coefficients(const Discretization& disc) {
    const ProblemSetup& s = disc.setup();
    const PdfBasis& pb = disc.pdf();
    const TorusGrid& g = disc.grid();
    const ConfQuadrature& q = disc.quad();
    const PdfFn psi0 = initial_pdf(s);
    const VectorXd& mw = disc.true_weight().values;
    const VectorXd& mm = disc.mm_weight().values;

    MatrixXd raw(g.size(), q.size());
    for (int p = 0; p < g.size(); ++p) {
        for (int a = 0; a < q.size(); ++a) raw(p, a) = psi0(g.point(p), q.node(a));
    }
    double scale = 1.0;
    if (s.pdf.normalize) {
        double mass = 0.0;
        for (int p = 0; p < g.size(); ++p) {
            const double z = disc.laws().drag(disc.rho0()(g.point(p)));
            for (int a = 0; a < q.size(); ++a) mass += g.weight() * z * q.weights()(a) * mw(a) * raw(p, a);
        }
        if (!(mass > 0)) throw ConfigError("initial.pdf.normalize", "initial PDF has no positive mass");
        scale = 1.0 / mass;
    }
    MatrixXd f(g.size(), q.size());
    for (int p = 0; p < g.size(); ++p) {
        for (int a = 0; a < q.size(); ++a) {
            f(p, a) = g.weight() * disc.cutoff().t(scale * raw(p, a) * mw(a) / mm(a)) * q.weights()(a) * mm(a);
        }
    }
    const MatrixXd c = pb.xvalues().transpose() * f * disc.conf().values();
    return pb.coefficient_vector(c);
}

SimState initial_state(const Discretization& disc) {
    SimState st{0.0,
                initial_velocity_coefficients(disc),
                initial_pdf_coefficients(disc),
                FlowMap::identity(disc.grid_ptr()),
                VectorXd(),
                VectorXd(),
                0};
    st.rho = density_on_grid(st.map, disc.rho0());
    const PolymerDensity pd = polymer_number_density(disc.pdf(), disc.statics(), disc.zeta_of(st.rho), st.d);
    st.varrho = pd.varrho;
    st.clamped = pd.clamped;
    return st;
}

StressField polymer_stress(const Discretization& disc, const VectorXd& zeta, const VectorXd& d) {
    StressInput in;
    in.zeta = zeta;
    in.psi = disc.pdf().values(d);
    if (disc.stress_form() == StressForm::gradient) in.grad_psi = disc.pdf().grad_q(d);
    return kramers_stress(disc.chain(), disc.laws().k, disc.quad(), disc.drift_weight(), in, disc.cutoff(),
                          disc.stress_form(), false);
}

VelocitySystem velocity_blocks(const Discretization& disc, const VectorXd& rho, const VectorXd& u,
                               const VectorXd& xi, double t, const ThetaOptions& opts) {
    const VectorXd zeta = disc.zeta_of(rho);
    VelocityInputs in;
    in.rho = rho;
    in.u = disc.velocity().field(u);
    in.varrho = polymer_number_density(disc.pdf(), disc.statics(), zeta, xi).varrho;
    in.tau = opts.freeze_stress ? opts.stress : polymer_stress(disc, zeta, xi).tau;
    in.f = opts.forcing_scale * disc.forcing_on_grid(t);
    return assemble_velocity_system(disc.velocity(), in, disc.laws());
}

ThetaResult theta_map(const Discretization& disc, const SimState& state, double dt, const VectorXd& u_next,
                      const VectorXd& xi_next, const ThetaOptions& opts) {
    const double t0 = state.time, t1 = t0 + dt, tm = t0 + 0.5 * dt;
    const VelocityTrajectory traj(disc.velocity_ptr(), {t0, t1}, {state.c, u_next});
    const FlowMap map_mid = state.map.advance(traj, tm, disc.transport_substep());
    FlowMap map1 = state.map.advance(traj, t1, disc.transport_substep());
    const VectorXd rho_mid = density_on_grid(map_mid, disc.rho0());
    VectorXd rho1 = density_on_grid(map1, disc.rho0());

    const VectorXd u_mid = 0.5 * (state.c + u_next);
    const VectorXd xi_mid = 0.5 * (state.d + xi_next);

    const VelocitySystem vs = velocity_blocks(disc, rho_mid, u_mid, xi_mid, tm, opts);
    const MatrixXd vl = vs.M - 0.5 * dt * vs.A;
    const VectorXd vr = (vs.M + 0.5 * dt * vs.A) * state.c + dt * vs.B;
    VectorXd c1 = solve_checked(vl, vr, vs.M, "velocity step");

    FpInputs fin;
    fin.zeta = disc.zeta_of(rho_mid);
    fin.u = disc.velocity().field(u_mid);
    fin.grad_u = disc.velocity().field_gradient(u_mid);
    fin.xi = xi_mid;
    const FpSystem fs = assemble_fp_system(disc.pdf(), disc.statics(), fin, disc.cutoff());
    const MatrixXd n0 = fp_mass_matrix(disc.pdf(), disc.statics(), disc.zeta_of(state.rho));
    MatrixXd n1 = fp_mass_matrix(disc.pdf(), disc.statics(), disc.zeta_of(rho1));
    const MatrixXd pl = n1 - 0.5 * dt * fs.P;
    const VectorXd pr = n0 * state.d + 0.5 * dt * (fs.P * state.d) + dt * fs.R;
    VectorXd d1 = solve_checked(pl, pr, n1, "PDF step");

    return ThetaResult{std::move(c1), std::move(d1), std::move(map1), std::move(rho1), rho_mid, vs.M,
                       std::move(n1)};
}

SimState step(const Discretization& disc, const SimState& state, double dt, const FixedPointConfig& fp,
              StepInfo* info) {
    if (!(dt > 0)) throw DomainError("step: dt must be positive");
    fp.validate();
    VectorXd u = state.c, xi = state.d;
    std::vector<double> history;
    for (int k = 1; k <= fp.max_iter; ++k) {
        ThetaResult th = theta_map(disc, state, dt, u, xi);
        const double r = std::max(max_abs(th.c - u), max_abs(th.d - xi));
        history.push_back(r);
        if (!std::isfinite(r) || r > 1e8) {
            std::ostringstream msg;
            msg << "Picard iteration diverged at t = " << state.time << " after " << k
                << " iterations (residual " << r << "); reduce dt";
            throw NonConvergenceError(msg.str(), history);
        }
        if (r <= fp.tol) {
            const VectorXd zeta = disc.zeta_of(th.rho);
            const PolymerDensity pd = polymer_number_density(disc.pdf(), disc.statics(), zeta, th.d);
            if (info) {
                info->iterations = k;
                info->residuals = history;
                info->mass_min_eig = min_eigenvalue(th.mass_mid);
                info->pdf_mass_min_eig = min_eigenvalue(th.pdf_mass);
            }
            return SimState{state.time + dt, std::move(th.c), std::move(th.d), std::move(th.map),
                            std::move(th.rho), pd.varrho, pd.clamped};
        }
        u = (1.0 - fp.damping) * u + fp.damping * th.c;
        xi = (1.0 - fp.damping) * xi + fp.damping * th.d;
    }
    std::ostringstream msg;
    msg << "Picard iteration did not converge at t = " << state.time << " within " << fp.max_iter
        << " iterations (last residual " << history.back() << "); reduce dt";
    throw NonConvergenceError(msg.str(), history);
}

} // namespace nsfp
