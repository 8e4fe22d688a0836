#include "nsfp/cli/commands.hpp"

#include <boost/version.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>

namespace nsfp {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kVersion = "0.1.0";

RunConfig prepare(const std::string& path, const CommandOptions& opts) {
    RunConfig cfg = load_config(path);
    if (opts.seed) cfg.setup.seed = *opts.seed;
    if (opts.cadence > 0) cfg.output.cadence = opts.cadence;
    if (!opts.out_dir.empty()) {
        cfg.output.dir = opts.out_dir;
    } else if (const char* env = std::getenv(kOutDirEnv); env && *env) {
        cfg.output.dir = env;
    }
    return cfg;
}

// Maps the error taxonomy onto exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DomainError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NonConvergenceError& e) {
        err << "solver error: " << e.what() << "\nresidual history:";
        for (double r : e.residual_history()) err << " " << r;
        err << "\n";
        return kExitSolver;
    } catch (const NumericalError& e) {
        err << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const fs::filesystem_error& e) {
        err << "output error: " << e.what() << "\n";
        return kExitConfig;
    }
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_snapshot(const fs::path& dir, int index, const Discretization& disc, const SimState& st) {
    const TorusGrid& g = disc.grid();
    const int np = g.size(), nq = disc.quad().size();
    const MatrixXd v = disc.velocity().field(st.c);
    const MatrixXd psi = disc.pdf().values(st.d);
    char stem[32];
    std::snprintf(stem, sizeof stem, "step_%06d", index);
    std::ofstream bin(dir / (std::string(stem) + ".bin"), std::ios::binary);
    auto put = [&](double x) { bin.write(reinterpret_cast<const char*>(&x), sizeof x); };
    for (int p = 0; p < np; ++p) put(st.rho(p));
    for (int p = 0; p < np; ++p) {
        for (int a = 0; a < 3; ++a) put(v(p, a));
    }
    for (int p = 0; p < np; ++p) {
        for (int a = 0; a < nq; ++a) put(psi(p, a));
    }
    const json side{
        {"time", st.time},
        {"dtype", "float64"},
        {"byte_order", "native"},
        {"order", "row-major; x-grid index (first axis slowest) x q-node x component"},
        {"grid_per_axis", g.per_axis()},
        {"dim", g.dim()},
        {"arrays",
         json::array({json{{"name", "rho"}, {"shape", {np}}, {"offset", 0}},
                      json{{"name", "velocity"}, {"shape", {np, 3}}, {"offset", np}},
                      json{{"name", "psi_hat"}, {"shape", {np, nq}}, {"offset", 4 * np}}})},
        {"velocity_coefficients", std::vector<double>(st.c.data(), st.c.data() + st.c.size())},
        {"pdf_coefficients", std::vector<double>(st.d.data(), st.d.data() + st.d.size())},
    };
    std::ofstream(dir / (std::string(stem) + ".json")) << side.dump(2) << "\n";
}

std::vector<double> series_row(const StepRecord& rec, const StepRecord& first) {
    const StateSummary& s = rec.summary;
    const EnergyReport& r = rec.report;
    return {r.time,
            r.kinetic,
            r.entropy,
            r.viscous,
            r.x_dissipation,
            r.q_dissipation,
            r.forcing_work,
            r.residual,
            s.rho_min,
            s.rho_max,
            s.psi_min,
            s.clamp_fraction,
            s.lambda_max,
            s.fluid_mass - first.summary.fluid_mass,
            s.pdf_mass - first.summary.pdf_mass,
            static_cast<double>(rec.iterations),
            rec.cancel.defect()};
}

json versions() {
    return {{"nsfp", kVersion},
            {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                          std::to_string(EIGEN_MINOR_VERSION)},
            {"boost", BOOST_LIB_VERSION},
            {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                  std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                  std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
            {"compiler", __VERSION__}};
}

} // namespace

const std::vector<SeriesColumn>& series_columns() {
    static const std::vector<SeriesColumn> cols{
        {"time", "time level t"},
        {"kinetic", "1/2 int rho |v|^2"},
        {"entropy", "k int M^m zeta(rho) F(psi-hat)"},
        {"viscous", "int mu(rho, varrho) |D(v)|^2"},
        {"x_dissipation", "4k int M^m |grad_x sqrt(psi-hat)|^2"},
        {"q_dissipation", "4k int M^m A(grad_q sqrt(psi-hat)):grad_q sqrt(psi-hat)"},
        {"forcing_work", "int rho f . v"},
        {"residual", "E(t) + int_0^t dissipation - E(0) - int_0^t forcing work"},
        {"rho_min", "min of rho on the grid"},
        {"rho_max", "max of rho on the grid"},
        {"psi_min", "min of psi-hat over grid x q nodes"},
        {"clamp_fraction", "fraction of grid x q nodes with psi-hat < 0"},
        {"lambda_max", "max_x int M^m psi-hat dq"},
        {"fluid_mass_drift", "int rho - int rho_0"},
        {"pdf_mass_drift", "int M^m zeta psi-hat minus its initial value"},
        {"picard_iterations", "fixed-point iterations of the step that produced this level"},
        {"cancellation_defect", "|int tau:grad v - k int M zeta Lambda_l(psi-hat)(grad v q).grad_q log psi-hat|"},
    };
    return cols;
}

int cmd_run(const std::string& path, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto start = std::chrono::steady_clock::now();
        const RunConfig cfg = prepare(path, opts);
        const Discretization disc(cfg.setup);
        const ValidationReport vr = validate_setup(cfg.setup, cfg.setup.laws, 32);
        for (const auto& v : vr.violations) err << "warning: " << v.check << ": " << v.detail << "\n";

        const fs::path dir(cfg.output.dir);
        fs::create_directories(dir / "snapshots");
        std::ofstream csv(dir / "series.csv");
        const auto& cols = series_columns();
        for (std::size_t i = 0; i < cols.size(); ++i) csv << (i ? "," : "") << cols[i].name;
        csv << "\r\n";

        const int steps = static_cast<int>(std::lround(cfg.setup.final_time / cfg.setup.dt));
        int level = 0;
        int snapshots = 0;
        StepRecord first;
        const auto setup_done = std::chrono::steady_clock::now();
        run(disc, [&](const SimState& st, const StepRecord& rec) {
            if (level == 0) first = rec;
            const bool last = level == steps;
            if (level % cfg.output.cadence == 0 || last) {
                const auto row = series_row(rec, first);
                for (std::size_t i = 0; i < row.size(); ++i) csv << (i ? "," : "") << fmt17(row[i]);
                csv << "\r\n";
            }
            const int sc = cfg.output.snapshot_cadence;
            if (level == 0 || last || (sc > 0 && level % sc == 0)) {
                write_snapshot(dir / "snapshots", level, disc, st);
                ++snapshots;
            }
            ++level;
        });
        csv.close();
        const auto end = std::chrono::steady_clock::now();

        json schema = json::array();
        for (const auto& c : cols) schema.push_back({{"name", c.name}, {"description", c.description}});
        json issues = json::array();
        for (const auto& v : vr.violations) issues.push_back({{"check", v.check}, {"detail", v.detail}});
        const json meta{
            {"config", config_to_json(cfg)},
            {"versions", versions()},
            {"timings",
             {{"setup_seconds", std::chrono::duration<double>(setup_done - start).count()},
              {"run_seconds", std::chrono::duration<double>(end - setup_done).count()}}},
            {"series_schema", {{"version", kSeriesSchemaVersion}, {"columns", schema}}},
            {"discretization",
             {{"grid_per_axis", disc.grid().per_axis()},
              {"q_nodes", disc.quad().size()},
              {"velocity_modes", disc.velocity().size()},
              {"pdf_modes", disc.pdf().size()}}},
            {"validation",
             {{"violations", issues},
              {"normalization_defect", vr.normalization_defect},
              {"borderline_b", vr.borderline_b}}},
            {"steps", steps},
            {"snapshots", snapshots},
        };
        std::ofstream(dir / "meta.json") << meta.dump(2) << "\n";
        out << "run complete: " << steps << " steps, output in " << dir.string() << "\n";
        return kExitOk;
    });
}

int cmd_check(const std::string& path, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        RunConfig cfg = prepare(path, opts);
        cfg.setup.final_time = cfg.check.steps * cfg.setup.dt;
        const Discretization disc(cfg.setup);
        const RunResult res = run(disc);
        const StateSummary& s0 = res.records.front().summary;
        const InvariantReport rep = invariant_suite(res.records, cfg.setup.laws, s0.rho_min, s0.rho_max,
                                                    cfg.setup.forcing.kind != "zero", cfg.check.tolerances);
        out << rep.table();
        if (!rep.pass()) {
            for (const auto& r : rep.rows) {
                if (!r.pass) err << "invariant failed: " << r.name << " (worst " << r.worst << ")\n";
            }
            return kExitInvariant;
        }
        return kExitOk;
    });
}

int cmd_sweep(const std::string& path, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfig cfg = prepare(path, opts);
        if (cfg.sweep.empty()) throw ConfigError("sweep", "no refinement ladders given");
        const auto rows = level_sweep(cfg.setup, cfg.sweep);
        const fs::path dir(cfg.output.dir);
        fs::create_directories(dir);
        std::ofstream csv(dir / "sweep.csv");
        csv << "axis,level_lo,level_hi,distance,ratio\r\n";
        for (const auto& r : rows) {
            csv << r.axis << "," << fmt17(r.level_lo) << "," << fmt17(r.level_hi) << "," << fmt17(r.distance) << ","
                << fmt17(r.ratio) << "\r\n";
            out << r.axis << " " << r.level_lo << " -> " << r.level_hi << ": distance " << r.distance << ", ratio "
                << r.ratio << "\n";
        }
        return kExitOk;
    });
}

int cmd_equilibrium(const std::string& path, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        RunConfig cfg = prepare(path, opts);
        cfg.setup.final_time = 100 * cfg.setup.dt;
        const Discretization disc(cfg.setup);
        const RunResult res = run(disc);
        const Trajectory& tr = res.trajectory;
        double drift = 0.0, tau = 0.0;
        for (std::size_t i = 0; i < tr.times.size(); ++i) {
            drift = std::max(drift, (tr.c[i] - tr.c[0]).cwiseAbs().maxCoeff());
            drift = std::max(drift, (tr.d[i] - tr.d[0]).cwiseAbs().maxCoeff());
            tau = std::max(tau, res.records[i].summary.tau_max);
        }
        const bool ok = drift <= 1e-9 && tau <= 1e-9;
        out << "equilibrium: max coefficient change " << drift << ", max |tau| " << tau << " -> "
            << (ok ? "steady" : "drifted") << "\n";
        return ok ? kExitOk : kExitInvariant;
    });
}

} // namespace nsfp
