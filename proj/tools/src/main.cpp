#include <iostream>

#include <CLI11.hpp>

#include "fracid_cli/commands.hpp"

int main(int argc, char** argv) {
    using namespace fracid::cli;
    CLI::App app{"Identification of fractional orders and coefficients from nonlocal observations"};
    app.require_subcommand(1);

    CommandOptions opt;
    auto common = [&opt](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "JSON configuration file");
        sub->add_option("--out", opt.out_path, "Output CSV path (default: stdout)");
        sub->add_option("--seed", opt.seed, "Reserved; the noise model is deterministic");
        sub->add_flag("--verbose", opt.verbose, "Print selection diagnostics to stderr");
    };

    auto* reconstruct = app.add_subcommand("reconstruct", "Estimate orders (and coefficient) from a t,psi CSV");
    common(reconstruct);
    reconstruct->add_option("--data", opt.data_path, "Observation CSV with header t,psi")->required();

    auto* experiment = app.add_subcommand("experiment", "Regenerate the benchmark tables for the built-in examples");
    common(experiment);
    experiment->add_option("--table", opt.table, "1 (two-term type I) or 2 (three-term type II)")
        ->check(CLI::IsMember({1, 2}));
    experiment->add_option("--noise", opt.noise, "ftn, stn, ttn or none")
        ->check(CLI::IsMember({"ftn", "stn", "ttn", "none"}));
    experiment->add_option("--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);

    auto* simulate = app.add_subcommand("simulate", "Write a t,psi observation CSV");
    common(simulate);

    auto* plotdata = app.add_subcommand("plotdata", "Write t,psi_data,psi_fit,F_delta on a dense grid");
    common(plotdata);
    plotdata->add_option("--data", opt.data_path, "Observation CSV with header t,psi")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kSuccess : kInputFailure;
    }

    if (*reconstruct) return cmd_reconstruct(opt, std::cerr);
    if (*experiment) return cmd_experiment(opt, std::cerr);
    if (*simulate) return cmd_simulate(opt, std::cerr);
    return cmd_plotdata(opt, std::cerr);
}
