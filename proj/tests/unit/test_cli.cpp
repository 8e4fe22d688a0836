#include <doctest.h>

#include "nsfp/cli/commands.hpp"
#include "nsfp/cli/config.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nsfp;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("nsfp_unit_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_json(const fs::path& dir, const json& j) {
    const fs::path p = dir / "config.json";
    std::ofstream(p) << j.dump(2);
    return p;
}

json minimal() {
    return json{{"final_time", 0.02}, {"dt", 0.01}, {"levels", {{"m", 4}, {"n", 6}}}};
}

std::string key_of(const json& j) {
    try {
        config_from_json(j);
    } catch (const ConfigError& e) {
        return e.key();
    }
    return "";
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("configuration survives a JSON round trip") {
    json j = minimal();
    j["chain"] = {{"b", {6.0}}};
    j["laws"] = {{"mu", {{"kind", "affine_rho"}, {"c0", 0.5}, {"c1", 0.5}}}, {"rho_min", 0.5}, {"rho_max", 1.5},
                 {"mu_min", 0.5}, {"mu_max", 1.5}};
    j["initial"] = {{"density", {{"kind", "sine"}, {"amplitude", 0.2}}}};
    j["sweep"] = {{"dt", {0.02, 0.01}}};
    const RunConfig a = config_from_json(j);
    const json echo = config_to_json(a);
    const RunConfig b = config_from_json(echo);
    CHECK(config_to_json(b) == echo);
    CHECK(b.setup.b == std::vector<double>{6.0});
    CHECK(b.setup.laws.mu(1.0) == doctest::Approx(1.0));
    CHECK(b.sweep.at("dt").size() == 2);
}

TEST_CASE("unknown keys and wrong types name the offending path") {
    json j = minimal();
    j["levels"]["nn"] = 3;
    CHECK(key_of(j) == "levels.nn");

    j = minimal();
    j["dt"] = "small";
    CHECK(key_of(j) == "dt");

    j = minimal();
    j["laws"] = {{"zeta", {{"kind", "cubic"}}}};
    CHECK(key_of(j) == "laws.zeta.kind");

    j = minimal();
    j["schema_version"] = 99;
    CHECK(key_of(j) == "schema_version");
}

TEST_CASE("b below 2 is a configuration error citing the constraint") {
    const fs::path dir = scratch("bad_b");
    json j = minimal();
    j["chain"] = {{"b", {1.5}}};
    std::ostringstream out, err;
    CHECK(cmd_run(write_json(dir, j).string(), {}, out, err) == kExitConfig);
    CHECK(err.str().find("b > 2") != std::string::npos);
    CHECK(err.str().find("chain.b") != std::string::npos);
}

TEST_CASE("missing or malformed files exit with code 2") {
    const fs::path dir = scratch("missing");
    std::ostringstream out, err;
    CHECK(cmd_check((dir / "nope.json").string(), {}, out, err) == kExitConfig);
    std::ofstream(dir / "broken.json") << "{ \"dt\": ";
    CHECK(cmd_run((dir / "broken.json").string(), {}, out, err) == kExitConfig);
}

TEST_CASE("output directory: --out beats the environment, which beats the config") {
    const fs::path dir = scratch("precedence");
    json j = minimal();
    j["output"] = {{"dir", (dir / "from_config").string()}};
    const std::string cfg = write_json(dir, j).string();
    std::ostringstream out, err;

    ::unsetenv(kOutDirEnv);
    CHECK(cmd_run(cfg, {}, out, err) == kExitOk);
    CHECK(fs::exists(dir / "from_config" / "series.csv"));

    ::setenv(kOutDirEnv, (dir / "from_env").string().c_str(), 1);
    CHECK(cmd_run(cfg, {}, out, err) == kExitOk);
    CHECK(fs::exists(dir / "from_env" / "meta.json"));

    CommandOptions opts;
    opts.out_dir = (dir / "from_flag").string();
    CHECK(cmd_run(cfg, opts, out, err) == kExitOk);
    CHECK(fs::exists(dir / "from_flag" / "snapshots" / "step_000000.bin"));
    ::unsetenv(kOutDirEnv);
}

TEST_CASE("series.csv header lists every documented column") {
    const fs::path dir = scratch("series");
    CommandOptions opts;
    opts.out_dir = (dir / "out").string();
    std::ostringstream out, err;
    REQUIRE(cmd_run(write_json(dir, minimal()).string(), opts, out, err) == kExitOk);
    std::ifstream csv(dir / "out" / "series.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header.back() == '\r');
    std::string expected;
    for (const auto& c : series_columns()) expected += (expected.empty() ? "" : ",") + std::string(c.name);
    CHECK(header == expected + "\r");
    int rows = 0;
    for (std::string line; std::getline(csv, line);) ++rows;
    CHECK(rows == 3);
}

}
