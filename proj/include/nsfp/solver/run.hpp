#pragma once

#include "nsfp/common.hpp"
#include "nsfp/diagnostics/diagnostics.hpp"
#include "nsfp/solver/solver.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace nsfp {

/// Coefficients and density at every committed time level.
struct Trajectory {
    std::vector<double> times;
    std::vector<VectorXd> c;
    std::vector<VectorXd> d;
    std::vector<VectorXd> rho;
};

struct RunResult {
    Trajectory trajectory;
    std::vector<StepRecord> records; // one per time level, including t = 0
    std::vector<StepInfo> steps;     // one per step
};

/// Called after every committed time level (including the initial one).
using StepObserver = std::function<void(const SimState&, const StepRecord&)>;

/// Advance the setup from 0 to final_time.  The energy residual in each record
/// is E(t) + int_0^t dissipation - E(0) - int_0^t forcing work, time integrals
/// by the trapezoid rule over steps.
RunResult run(const ProblemSetup& setup, const StepObserver& observer = {});
RunResult run(const Discretization& disc, const StepObserver& observer = {});

StepRecord record_state(const Discretization& disc, const SimState& state);

/// Refinement ladders keyed by axis: dt, ell, m, n, n_conf.
using SweepLadders = std::map<std::string, std::vector<double>>;

struct SweepRow {
    std::string axis;
    double level_lo = 0.0;
    double level_hi = 0.0;
    double distance = 0.0;
    double ratio = 0.0; // previous distance / this distance; NaN on the first row of an axis
};

/// L2-in-time distance between consecutive levels of v (L2 in x) plus psi-hat
/// (L2_M in x, q), sampled at the finer level's grid and q nodes at the
/// coarser level's time levels.
std::vector<SweepRow> level_sweep(const ProblemSetup& setup, const SweepLadders& ladders);

/// Distance between two runs as used by level_sweep (`fine` supplies the sample points).
double trajectory_distance(const Discretization& coarse, const Trajectory& a, const Discretization& fine,
                           const Trajectory& b);

} // namespace nsfp
