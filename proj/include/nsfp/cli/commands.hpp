#pragma once

#include "nsfp/cli/config.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace nsfp {

/// Exit codes shared by every command.
enum ExitCode : int { kExitOk = 0, kExitInvariant = 1, kExitConfig = 2, kExitSolver = 3 };

/// Command-line overrides.  The output directory resolves as --out, then the
/// NSFP_OUT_DIR environment variable, then output.dir from the config.
struct CommandOptions {
    std::string out_dir;
    int cadence = 0;
    std::optional<std::uint64_t> seed;
};

inline constexpr const char* kOutDirEnv = "NSFP_OUT_DIR";

/// Writes series.csv, snapshots/ and meta.json.
int cmd_run(const std::string& config_path, const CommandOptions& opts, std::ostream& out, std::ostream& err);
/// Short run followed by the invariant suite; prints the per-invariant table.
int cmd_check(const std::string& config_path, const CommandOptions& opts, std::ostream& out, std::ostream& err);
/// Level sweep over the configured ladders; writes sweep.csv.
int cmd_sweep(const std::string& config_path, const CommandOptions& opts, std::ostream& out, std::ostream& err);
/// 100 steps from the configured (equilibrium) state; exit 0 iff nothing moved.
int cmd_equilibrium(const std::string& config_path, const CommandOptions& opts, std::ostream& out,
                    std::ostream& err);

/// Column names and descriptions of series.csv, in order.
struct SeriesColumn {
    const char* name;
    const char* description;
};
const std::vector<SeriesColumn>& series_columns();
inline constexpr int kSeriesSchemaVersion = 1;

} // namespace nsfp
