#include "wallcross/commands.hpp"
#include "wallcross/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace wallcross;

int main(int argc, char** argv) {
    CLI::App app{"Wall-crossing computations for toric GIT quotients"};
    app.require_subcommand(1);
    std::string config_path, suite;
    long long seed = -1;
    int samples = -1, trunc = -1;
    double tol = -1;
    bool json_out = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON job configuration")->required();
        sub->add_option("--seed", seed, "RNG seed (overrides the config)");
        sub->add_option("--samples", samples, "number of samples");
        sub->add_option("--trunc", trunc, "series truncation order K");
        sub->add_option("--tol", tol, "residual tolerance (overrides the suite default)");
        sub->add_flag("--json", json_out, "print the JSON report instead of text");
    };
    for (const char* name : {"analyze", "boxes", "fixed-points", "continuation", "fm", "series"})
        add_common(app.add_subcommand(name));
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "uhfm, pairing, mb, ode or lifts")
        ->required()
        ->check(CLI::IsMember({"uhfm", "pairing", "mb", "ode", "lifts"}));
    add_common(verify);

    CLI11_PARSE(app, argc, argv);

    RunOptions opt;
    if (seed >= 0) opt.seed = static_cast<std::uint64_t>(seed);
    if (samples >= 0) opt.samples = samples;
    if (trunc >= 0) opt.trunc = trunc;
    if (tol >= 0) opt.tol = tol;

    try {
        const JobConfig cfg = load_config(config_path);
        const std::string cmd = app.get_subcommands().front()->get_name();
        CommandResult res;
        if (cmd == "analyze") res = cmd_analyze(cfg, opt);
        else if (cmd == "boxes") res = cmd_boxes(cfg, opt);
        else if (cmd == "fixed-points") res = cmd_fixed_points(cfg, opt);
        else if (cmd == "continuation") res = cmd_continuation(cfg, opt);
        else if (cmd == "fm") res = cmd_fm(cfg, opt);
        else if (cmd == "series") res = cmd_series(cfg, opt);
        else res = cmd_verify(cfg, suite, opt);
        std::cout << (json_out ? dump_report(res.report) : res.text);
        return res.pass ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
