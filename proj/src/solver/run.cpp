#include "nsfp/solver/run.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace nsfp {

namespace {

int step_count(const ProblemSetup& s) {
    const double raw = s.final_time / s.dt;
    const long n = std::lround(raw);
    if (std::abs(raw - static_cast<double>(n)) > 1e-9 * std::max(1.0, raw)) {
        throw ConfigError("final_time", "must be a whole number of steps dt");
    }
    return static_cast<int>(n);
}

void append(Trajectory& tr, const SimState& st) {
    tr.times.push_back(st.time);
    tr.c.push_back(st.c);
    tr.d.push_back(st.d);
    tr.rho.push_back(st.rho);
}

// Basis values of one discretization at another's sample points.
struct Sampler {
    std::vector<MatrixXd> v;  // per component, points x modes
    MatrixXd x;               // points x spatial functions
    MatrixXd q;               // q nodes x configuration functions

    Sampler(const Discretization& src, const Discretization& at) {
        const TorusGrid& g = at.grid();
        const int np = g.size();
        const int m = src.velocity().size();
        v.assign(3, MatrixXd::Zero(np, m));
        Eigen::Matrix<double, 3, Eigen::Dynamic> vals;
        for (int p = 0; p < np; ++p) {
            src.velocity().evaluate(g.point(p), vals, nullptr);
            for (int a = 0; a < 3; ++a) v[static_cast<std::size_t>(a)].row(p) = vals.row(a);
        }
        const ScalarFourierSet& xs = src.pdf().spatial();
        x.resize(np, xs.size());
        for (int p = 0; p < np; ++p) {
            for (int a = 0; a < xs.size(); ++a) x(p, a) = xs.value(a, g.point(p));
        }
        const ConfQuadrature& quad = at.quad();
        q.resize(quad.size(), src.conf().size());
        for (int a = 0; a < quad.size(); ++a) q.row(a) = src.conf().eval(quad.node(a)).transpose();
    }

    MatrixXd velocity(const VectorXd& c) const {
        MatrixXd out(v[0].rows(), 3);
        for (int a = 0; a < 3; ++a) out.col(a) = v[static_cast<std::size_t>(a)] * c;
        return out;
    }
    MatrixXd pdf(const PdfBasis& basis, const VectorXd& d) const {
        return x * basis.coefficient_matrix(d) * q.transpose();
    }
};

} // namespace

StepRecord record_state(const Discretization& disc, const SimState& state) {
    StepRecord rec;
    rec.report = energy(disc, state);
    rec.summary = summarize(disc, state);
    rec.cancel = cancellation(disc, state);
    rec.mass_min_eig = std::numeric_limits<double>::quiet_NaN();
    return rec;
}

RunResult run(const ProblemSetup& setup, const StepObserver& observer) {
    const Discretization disc(setup);
    return run(disc, observer);
}

RunResult run(const Discretization& disc, const StepObserver& observer) {
    const ProblemSetup& s = disc.setup();
    const int steps = step_count(s);
    RunResult out;
    SimState st = initial_state(disc);
    StepRecord rec = record_state(disc, st);
    const double e0 = rec.report.energy();
    double diss_int = 0.0, work_int = 0.0;
    append(out.trajectory, st);
    out.records.push_back(rec);
    if (observer) observer(st, rec);
    for (int i = 0; i < steps; ++i) {
        StepInfo info;
        // Times are i * dt rather than accumulated sums so ladders line up exactly.
        const double t_next = (i + 1) * s.dt;
        SimState next = step(disc, st, t_next - st.time, s.fixed_point, &info);
        next.time = t_next;
        StepRecord nrec = record_state(disc, next);
        const double h = next.time - st.time;
        diss_int += 0.5 * h * (rec.report.dissipation() + nrec.report.dissipation());
        work_int += 0.5 * h * (rec.report.forcing_work + nrec.report.forcing_work);
        nrec.report.residual = nrec.report.energy() + diss_int - e0 - work_int;
        nrec.iterations = info.iterations;
        nrec.mass_min_eig = info.mass_min_eig;
        st = std::move(next);
        rec = nrec;
        append(out.trajectory, st);
        out.records.push_back(rec);
        out.steps.push_back(std::move(info));
        if (observer) observer(st, rec);
    }
    return out;
}

double trajectory_distance(const Discretization& coarse, const Trajectory& a, const Discretization& fine,
                           const Trajectory& b) {
    const Sampler sa(coarse, fine);
    const Sampler sb(fine, fine);
    const TorusGrid& g = fine.grid();
    const ConfQuadrature& quad = fine.quad();
    const VectorXd wq = (quad.weights().array() * fine.true_weight().values.array()).matrix();

    std::vector<double> times, sq;
    std::size_t j = 0;
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        const double t = a.times[i];
        while (j < b.times.size() && b.times[j] < t - 1e-9) ++j;
        if (j == b.times.size()) break;
        if (std::abs(b.times[j] - t) > 1e-9) continue;
        const MatrixXd dv = sa.velocity(a.c[i]) - sb.velocity(b.c[j]);
        const MatrixXd dp = sa.pdf(coarse.pdf(), a.d[i]) - sb.pdf(fine.pdf(), b.d[j]);
        const double e = g.weight() * (dv.squaredNorm() + (dp.array().square().matrix() * wq).sum());
        times.push_back(t);
        sq.push_back(e);
    }
    double total = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) total += 0.5 * (times[i] - times[i - 1]) * (sq[i] + sq[i - 1]);
    if (times.size() == 1) total = sq[0];
    return std::sqrt(total);
}

std::vector<SweepRow> level_sweep(const ProblemSetup& setup, const SweepLadders& ladders) {
    std::vector<SweepRow> rows;
    for (const auto& [axis, levels] : ladders) {
        if (levels.size() < 2) continue;
        for (std::size_t i = 1; i < levels.size(); ++i) {
            const bool up = levels[i] > levels[i - 1], down = levels[i] < levels[i - 1];
            // dt refines downwards, every other axis upwards.
            if ((axis == "dt" && !down) || (axis != "dt" && !up)) {
                throw ConfigError("sweep." + axis, "ladder must be strictly monotone in the refining direction");
            }
        }
        std::vector<std::unique_ptr<Discretization>> discs;
        std::vector<Trajectory> runs;
        for (double level : levels) {
            ProblemSetup s = setup;
            if (axis == "dt") s.dt = level;
            else if (axis == "ell") s.ell = level;
            else if (axis == "m") s.m = static_cast<int>(level);
            else if (axis == "n") s.n = static_cast<int>(level);
            else if (axis == "n_conf") s.n_conf = static_cast<int>(level);
            else throw ConfigError("sweep." + axis, "unknown refinement axis");
            discs.push_back(std::make_unique<Discretization>(s));
            runs.push_back(run(*discs.back()).trajectory);
        }
        double prev = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t i = 1; i < levels.size(); ++i) {
            SweepRow row;
            row.axis = axis;
            row.level_lo = levels[i - 1];
            row.level_hi = levels[i];
            row.distance = trajectory_distance(*discs[i - 1], runs[i - 1], *discs[i], runs[i]);
            row.ratio = prev / row.distance;
            prev = row.distance;
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace nsfp
