// Command-line entry point: subcommands solve, exponents, and verify
// <target>, each configurable from a sectioned key-value file (--config)
// with flag overrides on top; flags always win. Exit codes: 0 success,
// 2 validation/usage rejection, 3 runtime failure.
#include <iostream>
#include <list>
#include <string>

#include <CLI11.hpp>

#include "nls/runner.hpp"

namespace {

struct FlagBinding {
    CLI::Option* opt = nullptr;
    std::string key;
    std::string value;
};

// The shared flag set; every flag addresses one config key.
void add_flags(CLI::App* sub, std::list<FlagBinding>& bindings) {
    static const std::pair<const char*, const char*> kMap[] = {
        {"--p", "parameters.p"},
        {"--s", "parameters.s"},
        {"--window", "parameters.window"},
        {"--horizon", "parameters.horizon"},
        {"--t-list", "parameters.t_list"},
        {"--tol", "parameters.tol"},
        {"--data", "parameters.data"},
        {"--amplitude", "parameters.amplitude"},
        {"--kappa", "parameters.kappa"},
        {"--grid-n", "grid.n"},
        {"--length", "grid.length"},
        {"--seed", "ensemble.seed"},
        {"--count", "ensemble.count"},
        {"--band-limit", "ensemble.band_limit"},
        {"--spectral-decay", "ensemble.spectral_decay"},
        {"--out", "output.directory"},
        {"--format", "output.format"},
    };
    for (const auto& [flag, key] : kMap) {
        bindings.push_back(FlagBinding{nullptr, key, ""});
        FlagBinding& b = bindings.back();
        b.opt = sub->add_option(flag, b.value, std::string("sets ") + key);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Twisted-Duhamel NLS solver and estimate-verification toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string verify_target;
    std::list<FlagBinding> bindings;

    CLI::App* solve = app.add_subcommand("solve", "run the fixed-point solver on chosen data");
    CLI::App* expo = app.add_subcommand("exponents", "emit the exponent tuple and its gates");
    CLI::App* verify = app.add_subcommand(
        "verify", "measure one inequality family over a seeded ensemble");
    verify->add_option("target", verify_target,
                       "decay | strichartz | fefferman-stein | duhamel | trilinear | leibniz | "
                       "uniqueness");
    for (CLI::App* sub : {solve, expo, verify}) {
        sub->add_option("--config", config_path, "sectioned key-value config file");
        add_flags(sub, bindings);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    nls::ExperimentConfig cfg;
    try {
        if (!config_path.empty()) cfg = nls::runner::parse_config_file(config_path);
        // The subcommand is itself the strongest override, then the flags.
        if (app.got_subcommand(solve)) cfg.command = "solve";
        if (app.got_subcommand(expo)) cfg.command = "exponents";
        if (app.got_subcommand(verify)) {
            cfg.command = "verify";
            if (!verify_target.empty()) cfg.target = verify_target;
        }
        for (const FlagBinding& b : bindings)
            if (b.opt->count() > 0) nls::runner::apply_key(cfg, b.key, b.value);
    } catch (const nls::ValidationError& e) {
        std::cerr << "error (validation): " << e.what() << '\n';
        return 2;
    }
    return nls::runner::run(cfg);
}
