// nsfp command-line front end:
//   nsfp run|check|sweep|equilibrium <config.json> [--out DIR] [--cadence N] [--seed S]

#include "nsfp/cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Navier-Stokes-Fokker-Planck simulator for dilute FENE polymer fluids"};
    app.require_subcommand(1);

    std::string config;
    std::string out_dir;
    int cadence = 0;
    std::uint64_t seed = 0;

    struct Command {
        const char* name;
        const char* help;
        int (*fn)(const std::string&, const nsfp::CommandOptions&, std::ostream&, std::ostream&);
    };
    const Command commands[] = {
        {"run", "advance the configured problem and write series.csv, snapshots/ and meta.json", nsfp::cmd_run},
        {"check", "short run followed by the invariant suite", nsfp::cmd_check},
        {"sweep", "refinement sweep over the configured ladders, writes sweep.csv", nsfp::cmd_sweep},
        {"equilibrium", "100 steps from an equilibrium state; fails on any drift", nsfp::cmd_equilibrium},
    };
    std::vector<CLI::App*> subs;
    for (const Command& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("config", config, "JSON run configuration")->required();
        sub->add_option("--out", out_dir, "output directory (overrides $NSFP_OUT_DIR and output.dir)");
        sub->add_option("--cadence", cadence, "series.csv row every N steps")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "seed for random initial data");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return nsfp::kExitConfig;
    }

    nsfp::CommandOptions opts;
    opts.out_dir = out_dir;
    opts.cadence = cadence;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (!subs[i]->parsed()) continue;
        if (subs[i]->count("--seed")) opts.seed = seed;
        return commands[i].fn(config, opts, std::cout, std::cerr);
    }
    return nsfp::kExitConfig;
}
