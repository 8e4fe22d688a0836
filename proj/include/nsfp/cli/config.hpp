#pragma once

#include "nsfp/diagnostics/diagnostics.hpp"
#include "nsfp/model/setup.hpp"
#include "nsfp/solver/run.hpp"

#include <json.hpp>

#include <string>

namespace nsfp {

struct OutputConfig {
    std::string dir = "nsfp-out";
    int cadence = 1;          // series.csv row every `cadence` steps
    int snapshot_cadence = 0; // 0: first and last level only
};

struct CheckConfig {
    int steps = 20;
    InvariantTolerances tolerances;
};

/// A complete run description: the problem, output policy, sweep ladders and
/// the invariant-suite settings used by `check`.
struct RunConfig {
    ProblemSetup setup;
    OutputConfig output;
    SweepLadders sweep;
    CheckConfig check;
};

inline constexpr int kConfigSchemaVersion = 1;

/// Strict parse: unknown keys and wrong types raise ConfigError naming the key path.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& config);

RunConfig load_config(const std::string& path);

} // namespace nsfp
