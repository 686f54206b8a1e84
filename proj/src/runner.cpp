#include "nls/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "nls/solver.hpp"

namespace nls {

namespace {

const std::set<std::string> kCommands = {"solve", "exponents", "verify"};
const std::set<std::string> kTargets = {"decay",    "strichartz", "fefferman-stein", "duhamel",
                                        "trilinear", "leibniz",    "uniqueness"};
const std::set<std::string> kFormats = {"json", "csv", "both"};
const std::set<std::string> kData = {"soliton", "plane"};

double parse_double(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size())
        throw ValidationError("config: key '" + key + "': '" + text + "' is not a number");
    return v;
}

long long parse_int(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size())
        throw ValidationError("config: key '" + key + "': '" + text + "' is not an integer");
    return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto a = item.find_first_not_of(" \t");
        const auto b = item.find_last_not_of(" \t");
        if (a == std::string::npos)
            throw ValidationError("config: key '" + key + "': empty list entry");
        out.push_back(parse_double(key, item.substr(a, b - a + 1)));
    }
    if (out.empty()) throw ValidationError("config: key '" + key + "': empty list");
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

Field make_data(const ExperimentConfig& cfg, const GridPtr& grid) {
    if (cfg.data == "soliton") {
        cvector vals(grid->n());
        for (int j = 0; j < grid->n(); ++j)
            vals[j] = cfg.amplitude * std::sqrt(2.0) / std::cosh(grid->x(j));
        return Field::from_values(grid, std::move(vals));
    }
    // Plane wave: one exact grid mode, amplitude as the coefficient.
    cvector spec(grid->n(), cplx(0.0));
    spec[grid->storage_of(cfg.kappa)] = cfg.amplitude;
    return Field::from_spectrum(grid, std::move(spec));
}

struct Outcome {
    std::string name;  // report file stem, unique per task
    report::ordered_json reports;
    std::optional<SpaceTimeField> snapshots;
};

Outcome execute_exponents(const ExperimentConfig& cfg) {
    const auto tuple =
        exponents::main_exponents(lab::rationalize(cfg.p), lab::rationalize(cfg.s));
    report::ordered_json reports;
    reports["exponents"] = report::to_json(tuple);
    report::ordered_json validation;
    for (const auto& [label, rep] : exponents::validate_main_tuple(tuple))
        validation[label] = report::to_json(rep);
    reports["validation"] = std::move(validation);
    return {"exponents", std::move(reports), std::nullopt};
}

Outcome execute_solve(const ExperimentConfig& cfg) {
    const GridPtr grid = make_grid(cfg.grid_n, cfg.length);
    SolverConfig scfg;
    scfg.p = cfg.p;
    scfg.s = cfg.s;
    scfg.grid = grid;
    scfg.tol = cfg.tol;
    const Field phi = make_data(cfg, grid);
    const Solution sol = cfg.horizon > 0.0 ? solver::solve_horizon(phi, cfg.horizon, scfg)
                                           : solver::picard_solve(phi, scfg);
    report::ordered_json solve;
    solve["metric_q"] = scfg.metric_q();
    solve["metric_r"] = scfg.metric_r();
    solve["residual"] = sol.residual;
    const double m0 = norms::lp_norm(phi, 2.0);
    const double m1 = norms::lp_norm(sol.field.snapshots().back(), 2.0);
    solve["mass_initial"] = m0 * m0;
    solve["mass_final"] = m1 * m1;
    solve["trace"] = report::to_json(sol.trace);
    report::ordered_json reports;
    reports["solve"] = std::move(solve);
    return {"solve", std::move(reports), sol.field};
}

Outcome execute_verify(const ExperimentConfig& cfg) {
    const GridPtr grid = make_grid(cfg.grid_n, cfg.length);
    SampleSpec spec;
    spec.seed = cfg.seed;
    spec.count = cfg.count;
    spec.band_limit = cfg.band_limit;
    spec.spectral_decay = cfg.spectral_decay;
    spec.grid = grid;

    report::ordered_json reports;
    if (cfg.target == "uniqueness") {
        SolverConfig scfg;
        scfg.p = cfg.p;
        scfg.s = cfg.s;
        scfg.grid = grid;
        scfg.tol = cfg.tol;
        const Field phi = make_data(cfg, grid);
        const double T =
            cfg.horizon > 0.0 ? cfg.horizon : 32.0 * solver::select_local_time(phi, scfg).T;
        reports["uniqueness"] =
            report::to_json(lab::uniqueness_experiment(phi, cfg.p, cfg.s, T, scfg));
        return {"verify-uniqueness", std::move(reports), std::nullopt};
    }
    if (cfg.target == "trilinear") {
        reports["trilinear"] = report::to_json(lab::check_trilinear(spec, cfg.p, cfg.s, cfg.t_list));
        return {"verify-trilinear", std::move(reports), std::nullopt};
    }

    // The remaining targets take their companion exponents from the main
    // tuple at (p, s) (the diagonal q = r = 3p for the Fourier-side check).
    // Decay is the exception: its hypothesis s >= 1-1/p-1/r is not implied
    // by the main tuple's r, so it gets its own canonical in-hypothesis
    // pair — r on the hypothesis boundary (floored at 8) and q at half the
    // strict q(1/p-1/2) < 1 budget, clamped into [2, 16].
    const auto tuple =
        exponents::main_exponents(lab::rationalize(cfg.p), lab::rationalize(cfg.s));
    const double q = tuple.inv_q.inv().to_double();
    const double r = tuple.inv_r.inv().to_double();
    if (cfg.target == "decay") {
        const double inv_rd = std::max(1.0 - 1.0 / cfg.p - cfg.s, 0.125);
        const double envelope = 1.0 / cfg.p - 0.5;
        const double qd = envelope <= 0.0 ? 16.0 : std::clamp(0.5 / envelope, 2.0, 16.0);
        reports["decay"] = report::to_json(
            lab::check_decay_embedding(spec, cfg.p, cfg.s, qd, 1.0 / inv_rd, cfg.window));
    } else if (cfg.target == "strichartz") {
        reports["homogeneous"] =
            report::to_json(lab::check_homogeneous_strichartz(spec, cfg.p, q, r, cfg.window));
        reports["inhomogeneous"] =
            report::to_json(lab::check_inhomogeneous_strichartz(spec, tuple, cfg.window));
    } else if (cfg.target == "fefferman-stein") {
        reports["fefferman_stein"] = report::to_json(
            lab::check_fefferman_stein(spec, cfg.p, 3.0 * cfg.p, 3.0 * cfg.p, cfg.window));
    } else if (cfg.target == "duhamel") {
        reports["duhamel_weighted"] =
            report::to_json(lab::check_duhamel_weighted(spec, tuple, cfg.window));
    } else {  // leibniz
        const double rho = tuple.inv_rho.inv().to_double();
        reports["fractional_leibniz"] =
            report::to_json(lab::check_fractional_leibniz(spec, cfg.s, r, rho));
    }
    return {"verify-" + cfg.target, std::move(reports), std::nullopt};
}

void write_outputs(const ExperimentConfig& cfg, const Outcome& outcome) {
    const report::ordered_json doc = report::envelope(cfg.resolved(), outcome.reports);
    if (cfg.out_dir.empty()) {
        if (cfg.format == "csv")
            report::csv_from_json(std::cout, outcome.reports);
        else
            std::cout << report::canonical_dump(doc);
        return;
    }
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    const fs::path base = fs::path(cfg.out_dir) / outcome.name;
    if (cfg.format == "json" || cfg.format == "both") {
        std::ofstream os(base.string() + ".json", std::ios::binary);
        if (!os) throw SolverError("cannot write " + base.string() + ".json");
        os << report::canonical_dump(doc);
    }
    if (cfg.format == "csv" || cfg.format == "both") {
        std::ofstream os(base.string() + ".csv", std::ios::binary);
        if (!os) throw SolverError("cannot write " + base.string() + ".csv");
        report::csv_from_json(os, outcome.reports);
    }
    if (outcome.snapshots) {
        std::ofstream os(base.string() + "-snapshots.csv", std::ios::binary);
        if (!os) throw SolverError("cannot write " + base.string() + "-snapshots.csv");
        report::write_snapshots_csv(os, *outcome.snapshots);
    }
}

}  // namespace

void ExperimentConfig::validate() const {
    if (!kCommands.count(command))
        throw ValidationError("config: experiment.command must be one of solve, exponents, "
                              "verify; got '" +
                              command + "'");
    if (command == "verify" && !kTargets.count(target))
        throw ValidationError(
            "config: experiment.target must be one of decay, strichartz, fefferman-stein, "
            "duhamel, trilinear, leibniz, uniqueness; got '" +
            target + "'");
    if (!kFormats.count(format))
        throw ValidationError("config: output.format must be json, csv, or both; got '" + format +
                              "'");
    if (!kData.count(data))
        throw ValidationError("config: parameters.data must be soliton or plane; got '" + data +
                              "'");
    if (!(window > 0.0) || !std::isfinite(window))
        throw ValidationError("config: parameters.window must be positive and finite");
    if (!(horizon >= 0.0) || !std::isfinite(horizon))
        throw ValidationError("config: parameters.horizon must be >= 0 and finite");
    if (!(tol > 0.0)) throw ValidationError("config: parameters.tol must be positive");
    if (!std::isfinite(amplitude))
        throw ValidationError("config: parameters.amplitude must be finite");
    for (double t : t_list)
        if (!(t > 0.0) || !std::isfinite(t))
            throw ValidationError("config: parameters.t_list entries must be positive and finite");
}

report::ordered_json ExperimentConfig::resolved() const {
    report::ordered_json j;
    j["experiment"] = report::ordered_json{{"command", command}, {"target", target}};
    j["parameters"] = report::ordered_json{
        {"p", p},          {"s", s},           {"window", window}, {"horizon", horizon},
        {"t_list", t_list}, {"tol", tol},      {"data", data},     {"amplitude", amplitude},
        {"kappa", kappa}};
    j["grid"] = report::ordered_json{{"n", grid_n}, {"length", length}};
    j["ensemble"] = report::ordered_json{{"seed", seed},
                                         {"count", count},
                                         {"band_limit", band_limit},
                                         {"spectral_decay", spectral_decay}};
    j["output"] = report::ordered_json{{"directory", out_dir}, {"format", format}};
    return j;
}

namespace runner {

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "experiment.command") cfg.command = value;
    else if (key == "experiment.target") cfg.target = value;
    else if (key == "parameters.p") cfg.p = parse_double(key, value);
    else if (key == "parameters.s") cfg.s = parse_double(key, value);
    else if (key == "parameters.window") cfg.window = parse_double(key, value);
    else if (key == "parameters.horizon") cfg.horizon = parse_double(key, value);
    else if (key == "parameters.t_list") cfg.t_list = parse_list(key, value);
    else if (key == "parameters.tol") cfg.tol = parse_double(key, value);
    else if (key == "parameters.data") cfg.data = value;
    else if (key == "parameters.amplitude") cfg.amplitude = parse_double(key, value);
    else if (key == "parameters.kappa") cfg.kappa = static_cast<int>(parse_int(key, value));
    else if (key == "grid.n") cfg.grid_n = static_cast<int>(parse_int(key, value));
    else if (key == "grid.length") cfg.length = parse_double(key, value);
    else if (key == "ensemble.seed")
        cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "ensemble.count") cfg.count = static_cast<int>(parse_int(key, value));
    else if (key == "ensemble.band_limit")
        cfg.band_limit = static_cast<int>(parse_int(key, value));
    else if (key == "ensemble.spectral_decay") cfg.spectral_decay = parse_double(key, value);
    else if (key == "output.directory") cfg.out_dir = value;
    else if (key == "output.format") cfg.format = value;
    else throw ValidationError("config: unknown key '" + key + "'");
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ValidationError("config: cannot open '" + path + "'");
    ExperimentConfig cfg;
    std::string line, section;
    int lineno = 0;
    bool any = false;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = path + ":" + std::to_string(lineno);
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ValidationError("config: " + where + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ValidationError("config: " + where + ": empty section name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config: " + where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ValidationError("config: " + where + ": expected 'key = value'");
        if (section.empty())
            throw ValidationError("config: " + where + ": key '" + key +
                                  "' appears before any [section]");
        try {
            apply_key(cfg, section + "." + key, value);
        } catch (const ValidationError& e) {
            throw ValidationError("config: " + where + ": " + e.what());
        }
        any = true;
    }
    if (!any) throw ValidationError("config: '" + path + "' is empty");
    return cfg;
}

int run(const ExperimentConfig& cfg) {
    try {
        cfg.validate();
        Outcome outcome;
        if (cfg.command == "exponents") outcome = execute_exponents(cfg);
        else if (cfg.command == "solve") outcome = execute_solve(cfg);
        else outcome = execute_verify(cfg);
        write_outputs(cfg, outcome);
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << "error (validation): " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error (runtime): " << e.what() << '\n';
        return 3;
    }
}

}  // namespace runner

}  // namespace nls
