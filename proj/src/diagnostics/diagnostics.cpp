#include "nsfp/diagnostics/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace nsfp {

namespace {

constexpr double kFloor = 1e-12;

std::string where(double t, const Vec3& x) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "t=%.6g x=(%.6g, %.6g, %.6g)", t, x(0), x(1), x(2));
    return buf;
}

} // namespace

EnergyReport energy(const Discretization& disc, const SimState& st) {
    const TorusGrid& g = disc.grid();
    const ConfQuadrature& quad = disc.quad();
    const int np = g.size(), nq = quad.size(), d = disc.torus().dim, K = quad.springs();
    const double w = g.weight(), k = disc.laws().k;
    const MatrixXd& A = disc.rouse().matrix();

    EnergyReport rep;
    rep.time = st.time;
    const MatrixXd v = disc.velocity().field(st.c);
    const std::vector<Mat3> gv = disc.velocity().field_gradient(st.c);
    const MatrixXd f = disc.forcing_on_grid(st.time);
    for (int p = 0; p < np; ++p) {
        const double rho = st.rho(p);
        const Mat3 D = 0.5 * (gv[static_cast<std::size_t>(p)] + gv[static_cast<std::size_t>(p)].transpose());
        rep.kinetic += 0.5 * w * rho * v.row(p).squaredNorm();
        rep.viscous += w * disc.laws().viscosity(rho, st.varrho(p)) * D.squaredNorm();
        rep.forcing_work += w * rho * f.row(p).dot(v.row(p));
    }

    const PdfBasis& pb = disc.pdf();
    const MatrixXd psi = pb.values(st.d);
    std::vector<MatrixXd> gx;
    for (int b = 0; b < d; ++b) gx.push_back(pb.grad_x(st.d, b));
    const std::vector<MatrixXd> gq = pb.grad_q(st.d);
    const VectorXd wq = (quad.weights().array() * disc.mm_weight().values.array()).matrix();
    const VectorXd zeta = disc.zeta_of(st.rho);
    double ent = 0.0, xd = 0.0, qd = 0.0, qg = 0.0;
    for (int p = 0; p < np; ++p) {
        for (int a = 0; a < nq; ++a) {
            const double s = psi(p, a);
            const double wt = w * wq(a);
            ent += wt * zeta(p) * entropy_F(std::max(s, 0.0));
            if (s <= kFloor) {
                ++rep.floored;
                continue;
            }
            double gx2 = 0.0;
            for (int b = 0; b < d; ++b) gx2 += gx[static_cast<std::size_t>(b)](p, a) * gx[static_cast<std::size_t>(b)](p, a);
            double rouse = 0.0, plain = 0.0;
            for (int i = 0; i < K; ++i) {
                for (int j = 0; j < K; ++j) {
                    double dot = 0.0;
                    for (int r = 0; r < d; ++r) {
                        dot += gq[static_cast<std::size_t>(i * d + r)](p, a) * gq[static_cast<std::size_t>(j * d + r)](p, a);
                    }
                    rouse += A(i, j) * dot;
                    if (i == j) plain += dot;
                }
            }
            xd += wt * gx2 / s;
            qd += wt * rouse / s;
            qg += wt * plain / s;
        }
    }
    // 4 |grad sqrt(s)|^2 = |grad s|^2 / s.
    rep.entropy = k * ent;
    rep.x_dissipation = k * xd;
    rep.q_dissipation = k * qd;
    rep.q_gradient = k * qg;
    return rep;
}

StateSummary summarize(const Discretization& disc, const SimState& st) {
    const TorusGrid& g = disc.grid();
    const ConfQuadrature& quad = disc.quad();
    StateSummary s;
    Eigen::Index imin = 0, imax = 0;
    s.rho_min = st.rho.minCoeff(&imin);
    s.rho_max = st.rho.maxCoeff(&imax);
    s.rho_min_at = g.point(static_cast<int>(imin));
    s.rho_max_at = g.point(static_cast<int>(imax));
    s.fluid_mass = g.integrate(st.rho);

    const MatrixXd psi = disc.pdf().values(st.d);
    const VectorXd wq = (quad.weights().array() * disc.mm_weight().values.array()).matrix();
    const VectorXd lambda = psi * wq;
    const VectorXd zeta = disc.zeta_of(st.rho);
    s.pdf_mass = g.weight() * zeta.dot(lambda);
    s.lambda_max = lambda.maxCoeff();
    s.psi_min = psi.minCoeff();
    s.clamp_fraction = static_cast<double>((psi.array() < 0.0).count()) / static_cast<double>(psi.size());
    const StressField tau = polymer_stress(disc, zeta, st.d);
    for (const Mat3& t : tau.tau) s.tau_max = std::max(s.tau_max, t.cwiseAbs().maxCoeff());
    return s;
}

Cancellation cancellation(const Discretization& disc, const SimState& st) {
    const TorusGrid& g = disc.grid();
    const ConfQuadrature& quad = disc.quad();
    const int np = g.size(), nq = quad.size(), d = disc.torus().dim, K = quad.springs();
    const std::vector<Mat3> gv = disc.velocity().field_gradient(st.c);
    const VectorXd zeta = disc.zeta_of(st.rho);
    const StressField tau = polymer_stress(disc, zeta, st.d);

    Cancellation out;
    for (int p = 0; p < np; ++p) {
        out.stress_power += g.weight() * (tau.tau[static_cast<std::size_t>(p)].array() * gv[static_cast<std::size_t>(p)].array()).sum();
    }
    const MatrixXd psi = disc.pdf().values(st.d);
    const std::vector<MatrixXd> gq = disc.pdf().grad_q(st.d);
    const VectorXd& mw = disc.drift_weight().values;
    const MatrixXd& nodes = quad.nodes();
    double drift = 0.0;
    for (int p = 0; p < np; ++p) {
        const Mat3& G = gv[static_cast<std::size_t>(p)];
        if (G.isZero(0.0)) continue;
        double acc = 0.0;
        for (int a = 0; a < nq; ++a) {
            double pair = 0.0;
            for (int s = 0; s < K; ++s) {
                for (int r = 0; r < d; ++r) {
                    double gq_r = 0.0;
                    for (int c = 0; c < d; ++c) gq_r += G(r, c) * nodes(a, s * d + c);
                    pair += gq_r * gq[static_cast<std::size_t>(s * d + r)](p, a);
                }
            }
            acc += quad.weights()(a) * mw(a) * disc.cutoff().gamma(psi(p, a)) * pair;
        }
        drift += g.weight() * zeta(p) * acc;
    }
    out.drift_power = disc.laws().k * drift;
    return out;
}

double stress_form_consistency(const Discretization& disc, const SimState& st) {
    StressInput in;
    in.zeta = disc.zeta_of(st.rho);
    in.psi = disc.pdf().values(st.d);
    in.grad_psi = disc.pdf().grad_q(st.d);
    return stress_form_deviation(disc.chain(), disc.laws().k, disc.quad(), disc.true_weight(), in,
                                 disc.cutoff());
}

double nikolskii_norm(const std::vector<VectorXd>& series, double spacing, double gamma,
                      const VectorXd& weights) {
    const int n = static_cast<int>(series.size());
    if (n < 3) throw DomainError("nikolskii_norm: at least 3 snapshots are required");
    if (!(spacing > 0)) throw DomainError("nikolskii_norm: spacing must be positive");
    auto sq = [&](const VectorXd& e) {
        return weights.size() ? (weights.array() * e.array().square()).sum() : e.squaredNorm();
    };
    double best = 0.0;
    for (int j = 1; j <= n - 2; ++j) {
        const int last = n - 1 - j;
        double integral = 0.0;
        for (int i = 0; i <= last; ++i) {
            const double e = sq(series[static_cast<std::size_t>(i + j)] - series[static_cast<std::size_t>(i)]);
            integral += (i == 0 || i == last ? 0.5 : 1.0) * e;
        }
        integral *= spacing;
        const double h = j * spacing;
        best = std::max(best, std::pow(h, -gamma) * std::sqrt(integral));
    }
    return best;
}

std::string InvariantReport::table() const {
    std::ostringstream out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-16s %-5s %14s %12s  %s\n", "invariant", "ok", "worst", "tolerance", "where");
    out << buf;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%-16s %-5s %14.6e %12.3e  %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                      r.worst, r.tolerance, r.location.c_str());
        out << buf;
    }
    return out.str();
}

InvariantReport invariant_suite(const std::vector<StepRecord>& records, const MaterialLaws& laws,
                                double rho0_min, double rho0_max, bool forced, const InvariantTolerances& tol) {
    InvariantReport rep;
    if (records.empty()) return rep;
    const StepRecord& first = records.front();

    InvariantRow dens{"density_bounds", 0.0, tol.density, first.report.time, "", true};
    InvariantRow fmass{"fluid_mass", 0.0, tol.fluid_mass, first.report.time, "relative drift", true};
    InvariantRow pmass{"pdf_mass", 0.0, tol.pdf_mass, first.report.time, "relative drift", true};
    InvariantRow maxp{"max_principle", 0.0, tol.max_principle, first.report.time, "", true};
    InvariantRow energy_row{"energy_monotone", 0.0, tol.energy_slack, first.report.time,
                            forced ? "skipped (forced run)" : "", true};
    InvariantRow cancel{"cancellation", 0.0, tol.cancellation, first.report.time, "", true};
    InvariantRow eig{"mass_matrix", 0.0, tol.mass_eig, first.report.time, "rho_min - lambda_min(M)", true};
    InvariantRow neg{"psi_negativity", 0.0, 0.0, first.report.time, "", true};

    const double lo = std::max(laws.rho_min, rho0_min), hi = std::min(laws.rho_max, rho0_max);
    double worst_clamp = 0.0;
    double psi_low = first.summary.psi_min;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const StepRecord& r = records[i];
        const double t = r.report.time;
        const double below = lo - r.summary.rho_min, above = r.summary.rho_max - hi;
        if (below > dens.worst) {
            dens.worst = below;
            dens.time = t;
            dens.location = where(t, r.summary.rho_min_at);
        }
        if (above > dens.worst) {
            dens.worst = above;
            dens.time = t;
            dens.location = where(t, r.summary.rho_max_at);
        }
        const double fm = std::abs(r.summary.fluid_mass - first.summary.fluid_mass) /
                          std::max(std::abs(first.summary.fluid_mass), 1e-300);
        if (fm > fmass.worst) {
            fmass.worst = fm;
            fmass.time = t;
        }
        const double pm = std::abs(r.summary.pdf_mass - first.summary.pdf_mass) /
                          std::max(std::abs(first.summary.pdf_mass), 1e-300);
        if (pm > pmass.worst) {
            pmass.worst = pm;
            pmass.time = t;
        }
        const double mp = r.summary.lambda_max - first.summary.lambda_max;
        if (mp > maxp.worst) {
            maxp.worst = mp;
            maxp.time = t;
        }
        if (i > 0 && !forced) {
            const double rise = r.report.energy() - records[i - 1].report.energy();
            if (rise > energy_row.worst) {
                energy_row.worst = rise;
                energy_row.time = t;
            }
        }
        if (r.cancel.defect() > cancel.worst) {
            cancel.worst = r.cancel.defect();
            cancel.time = t;
        }
        if (i > 0 && std::isfinite(r.mass_min_eig)) {
            const double gap = laws.rho_min * (1.0 - tol.mass_eig) - r.mass_min_eig;
            if (gap > eig.worst) {
                eig.worst = gap;
                eig.time = t;
            }
        }
        if (r.summary.psi_min < psi_low) {
            psi_low = r.summary.psi_min;
            neg.time = t;
        }
        neg.worst = std::max(0.0, -psi_low);
        worst_clamp = std::max(worst_clamp, r.summary.clamp_fraction);
    }
    auto stamp = [](InvariantRow& row) {
        if (row.location.empty()) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "t=%.6g", row.time);
            row.location = buf;
        }
    };
    dens.pass = dens.worst <= tol.density;
    fmass.pass = fmass.worst <= tol.fluid_mass;
    pmass.pass = pmass.worst <= tol.pdf_mass;
    maxp.pass = maxp.worst <= tol.max_principle;
    energy_row.pass = forced || energy_row.worst <= tol.energy_slack;
    cancel.pass = cancel.worst <= tol.cancellation;
    eig.pass = eig.worst <= 0.0;
    eig.tolerance = 0.0;
    {
        char buf[96];
        std::snprintf(buf, sizeof buf, "min psi-hat %.3e, clamp fraction %.3e (reported only)", psi_low, worst_clamp);
        neg.location = buf;
    }
    for (InvariantRow* row : {&dens, &fmass, &pmass, &maxp, &energy_row, &cancel, &eig}) stamp(*row);
    rep.rows = {dens, fmass, pmass, maxp, energy_row, cancel, eig, neg};
    return rep;
}

} // namespace nsfp
