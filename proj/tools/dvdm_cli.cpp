// Batch front door: run simulations, convergence sweeps, and randomized
// diagnostic audits from a JSON config; emits CSV/JSON for plotting and CI.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <variant>

#include "dvdm/analysis.hpp"
#include "dvdm/checks.hpp"
#include "dvdm/grid.hpp"
#include "dvdm/invariants.hpp"
#include "dvdm/solver.hpp"

using nlohmann::json;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void ensure_keys(const json& obj, std::initializer_list<const char*> allowed,
                 const std::string& context) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) known = true;
        if (!known)
            throw ConfigError("unknown key \"" + it.key() + "\" in " + context);
    }
}

template <class T>
T require(const json& obj, const char* key, const std::string& context) {
    if (!obj.contains(key))
        throw ConfigError("missing key \"" + std::string(key) + "\" in " + context);
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("bad value for \"" + std::string(key) + "\" in " + context);
    }
}

template <class T>
T get_or(const json& obj, const char* key, T fallback) {
    return obj.contains(key) ? obj.at(key).get<T>() : fallback;
}

struct SolitonInitial {
    double c = 1.0;
    double x0 = 0.0;
};
struct CosineInitial {
    double amplitude = 0.1;
    int mode = 1;
    double phase = 0.0;
};
struct SamplesInitial {
    std::vector<double> values;
};
struct FileInitial {
    std::string path;
};
using InitialSpec = std::variant<SolitonInitial, CosineInitial, SamplesInitial, FileInitial>;

struct Outputs {
    std::string diagnostics_path;
    std::string timeseries_path;
    std::string format = "csv";
    int state_stride = 1;
};

struct RunConfig {
    dvdm::EquationSpec equation;
    double L = 0, T = 0;
    int K = 0, M = 0;
    InitialSpec initial;
    dvdm::SolverConfig solver;
    Outputs outputs;
};

dvdm::Family parse_family(const std::string& s) {
    if (s == "kdv") return dvdm::Family::KdV;
    if (s == "gkdv") return dvdm::Family::GeneralizedKdV;
    if (s == "ostrovsky") return dvdm::Family::Ostrovsky;
    throw ConfigError("unknown equation family \"" + s + "\"");
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json root;
    try {
        in >> root;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    ensure_keys(root, {"equation", "grid", "initial", "solver", "outputs"}, "config");

    RunConfig cfg;
    {
        const json& eq = root.at("equation");
        ensure_keys(eq, {"family", "alpha", "beta", "p", "gamma"}, "equation");
        cfg.equation.family = parse_family(require<std::string>(eq, "family", "equation"));
        cfg.equation.alpha = require<double>(eq, "alpha", "equation");
        cfg.equation.beta = require<double>(eq, "beta", "equation");
        cfg.equation.p = get_or(eq, "p", 2);
        cfg.equation.gamma = get_or(eq, "gamma", 0.0);
        dvdm::validate(cfg.equation);
    }
    {
        const json& g = root.at("grid");
        ensure_keys(g, {"L", "K", "T", "M"}, "grid");
        cfg.L = require<double>(g, "L", "grid");
        cfg.K = require<int>(g, "K", "grid");
        cfg.T = require<double>(g, "T", "grid");
        cfg.M = require<int>(g, "M", "grid");
    }
    {
        const json& ini = root.at("initial");
        const auto type = require<std::string>(ini, "type", "initial");
        if (type == "soliton") {
            ensure_keys(ini, {"type", "c", "x0"}, "initial");
            cfg.initial = SolitonInitial{require<double>(ini, "c", "initial"),
                                         require<double>(ini, "x0", "initial")};
        } else if (type == "cosine") {
            ensure_keys(ini, {"type", "amplitude", "mode", "phase"}, "initial");
            cfg.initial = CosineInitial{require<double>(ini, "amplitude", "initial"),
                                        require<int>(ini, "mode", "initial"),
                                        get_or(ini, "phase", 0.0)};
        } else if (type == "samples") {
            ensure_keys(ini, {"type", "values"}, "initial");
            cfg.initial = SamplesInitial{require<std::vector<double>>(ini, "values", "initial")};
        } else if (type == "file") {
            ensure_keys(ini, {"type", "path"}, "initial");
            cfg.initial = FileInitial{require<std::string>(ini, "path", "initial")};
        } else {
            throw ConfigError("unknown initial type \"" + type + "\"");
        }
    }
    {
        const json& s = root.at("solver");
        ensure_keys(s, {"method", "tol", "max_iter", "guard"}, "solver");
        const auto method = get_or<std::string>(s, "method", "fixed_point");
        if (method == "fixed_point")
            cfg.solver.method = dvdm::Method::FixedPoint;
        else if (method == "newton")
            cfg.solver.method = dvdm::Method::Newton;
        else
            throw ConfigError("unknown solver method \"" + method + "\"");
        cfg.solver.tol = get_or(s, "tol", 1e-12);
        cfg.solver.max_iter = get_or(s, "max_iter", 50);
        if (s.contains("guard")) {
            const json& g = s.at("guard");
            ensure_keys(g, {"q", "r", "enforce"}, "solver.guard");
            dvdm::GuardParams gp;
            gp.q = require<double>(g, "q", "solver.guard");
            gp.r = require<double>(g, "r", "solver.guard");
            gp.enforce = get_or(g, "enforce", false);
            cfg.solver.guard = gp;
        }
    }
    if (root.contains("outputs")) {
        const json& o = root.at("outputs");
        ensure_keys(o, {"diagnostics_path", "timeseries_path", "format", "state_stride"},
                    "outputs");
        cfg.outputs.diagnostics_path = get_or<std::string>(o, "diagnostics_path", "");
        cfg.outputs.timeseries_path = get_or<std::string>(o, "timeseries_path", "");
        cfg.outputs.format = get_or<std::string>(o, "format", "csv");
        cfg.outputs.state_stride = get_or(o, "state_stride", 1);
        if (cfg.outputs.format != "csv" && cfg.outputs.format != "json")
            throw ConfigError("outputs.format must be csv or json");
        if (cfg.outputs.state_stride < 1)
            throw ConfigError("outputs.state_stride must be at least 1");
    }
    return cfg;
}

dvdm::State build_initial(const RunConfig& cfg, const dvdm::Grid& grid) {
    if (const auto* s = std::get_if<SolitonInitial>(&cfg.initial)) {
        return dvdm::sample(dvdm::soliton_solution(s->c, s->x0, cfg.equation.alpha,
                                                   cfg.equation.beta, grid.L),
                            grid, 0.0);
    }
    if (const auto* c = std::get_if<CosineInitial>(&cfg.initial)) {
        dvdm::State v(static_cast<std::size_t>(grid.K));
        const double kappa = 2.0 * std::numbers::pi * c->mode / grid.L;
        for (int k = 0; k < grid.K; ++k)
            v[k] = c->amplitude * std::cos(kappa * k * grid.dx + c->phase);
        return v;
    }
    if (const auto* s = std::get_if<SamplesInitial>(&cfg.initial)) {
        if (s->values.size() != static_cast<std::size_t>(grid.K))
            throw ConfigError("initial.values length does not match grid.K");
        return s->values;
    }
    const auto& f = std::get<FileInitial>(cfg.initial);
    std::ifstream in(f.path);
    if (!in) throw ConfigError("cannot open initial state file " + f.path);
    json arr;
    in >> arr;
    auto v = arr.get<std::vector<double>>();
    if (v.size() != static_cast<std::size_t>(grid.K))
        throw ConfigError("initial state file length does not match grid.K");
    return v;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_diagnostics(const RunConfig& cfg, const dvdm::TimeSeries& ts) {
    if (cfg.outputs.diagnostics_path.empty()) return;
    std::ofstream out(cfg.outputs.diagnostics_path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + cfg.outputs.diagnostics_path);
    if (cfg.outputs.format == "json") {
        json rows = json::array();
        for (std::size_t m = 0; m < ts.diags.size(); ++m) {
            const auto& d = ts.diags[m];
            rows.push_back({{"step", m + 1},
                            {"time", (m + 1) * ts.grid.dt},
                            {"mass", d.mass},
                            {"energy", d.energy},
                            {"l2", d.l2},
                            {"sup_norm", d.sup_norm},
                            {"iterations", d.iterations},
                            {"contraction_estimate", d.contraction_estimate},
                            {"update_norm", d.final_update_norm}});
        }
        out << rows.dump(2) << "\n";
        return;
    }
    out << "step,time,mass,energy,l2,sup_norm,iterations,contraction_estimate,update_norm\n";
    for (std::size_t m = 0; m < ts.diags.size(); ++m) {
        const auto& d = ts.diags[m];
        out << (m + 1) << ',' << fmt((m + 1) * ts.grid.dt) << ',' << fmt(d.mass) << ','
            << fmt(d.energy) << ',' << fmt(d.l2) << ',' << fmt(d.sup_norm) << ','
            << d.iterations << ',' << fmt(d.contraction_estimate) << ','
            << fmt(d.final_update_norm) << '\n';
    }
}

void write_timeseries(const RunConfig& cfg, const dvdm::TimeSeries& ts) {
    if (cfg.outputs.timeseries_path.empty()) return;
    std::ofstream out(cfg.outputs.timeseries_path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + cfg.outputs.timeseries_path);
    json doc;
    doc["grid"] = {{"L", ts.grid.L}, {"K", ts.grid.K}, {"T", ts.grid.T}, {"M", ts.grid.M}};
    doc["equation"] = {{"family", dvdm::family_name(ts.spec.family)},
                       {"alpha", ts.spec.alpha},
                       {"beta", ts.spec.beta},
                       {"p", ts.spec.p},
                       {"gamma", ts.spec.gamma}};
    doc["state_stride"] = cfg.outputs.state_stride;
    json states = json::array();
    const int last = static_cast<int>(ts.states.size()) - 1;
    for (int m = 0; m <= last; ++m) {
        if (m % cfg.outputs.state_stride != 0 && m != last) continue;
        states.push_back({{"step", m}, {"time", m * ts.grid.dt}, {"values", ts.states[m]}});
    }
    doc["states"] = std::move(states);
    out << doc.dump() << "\n";
}

void emit_error(const std::string& msg) {
    std::cerr << json{{"error", msg}}.dump() << "\n";
}

int cmd_run(const std::string& config_path, bool quiet) {
    RunConfig cfg;
    dvdm::Grid grid;
    dvdm::State u0;
    try {
        cfg = parse_config(config_path);
        grid = dvdm::make_grid(cfg.L, cfg.K, cfg.T, cfg.M);
        u0 = build_initial(cfg, grid);
    } catch (const std::exception& e) {
        emit_error(e.what());
        return 1;
    }
    dvdm::TimeSeries ts;
    try {
        ts = dvdm::simulate(cfg.equation, grid, u0, cfg.solver);
    } catch (const dvdm::GuardViolationError& e) {
        emit_error(e.what());
        return 1;
    }
    try {
        write_diagnostics(cfg, ts);
        write_timeseries(cfg, ts);
    } catch (const std::exception& e) {
        emit_error(e.what());
        return 1;
    }
    if (ts.failure) {
        emit_error("solver did not converge at step " + std::to_string(ts.failure->step) +
                   " (last update norm " + fmt(ts.failure->last_update_norm) + ")");
        return 2;
    }
    if (!quiet)
        std::cout << "completed " << grid.M << " steps; " << ts.diags.size()
                  << " diagnostic rows\n";
    return 0;
}

int sweep_threads(int levels) {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("DVDM_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return std::min(n, levels);
}

int cmd_sweep(const std::string& config_path, int levels, const std::string& out_path,
              bool quiet) {
    RunConfig cfg;
    dvdm::Grid base;
    dvdm::SpaceTimeFn exact;
    try {
        if (levels < 2) throw ConfigError("sweep needs at least 2 levels");
        cfg = parse_config(config_path);
        base = dvdm::make_grid(cfg.L, cfg.K, cfg.T, cfg.M);
        if (const auto* s = std::get_if<SolitonInitial>(&cfg.initial)) {
            exact = dvdm::soliton_solution(s->c, s->x0, cfg.equation.alpha,
                                           cfg.equation.beta, cfg.L);
        } else if (const auto* c = std::get_if<CosineInitial>(&cfg.initial)) {
            if (cfg.equation.alpha != 0.0)
                throw ConfigError("cosine initial data has a closed form only for alpha = 0");
            const double kappa = 2.0 * std::numbers::pi * c->mode / cfg.L;
            double omega = -cfg.equation.beta * kappa * kappa * kappa;
            if (cfg.equation.family == dvdm::Family::Ostrovsky && kappa != 0.0)
                omega -= cfg.equation.gamma / kappa;
            const double amp = c->amplitude, phase = c->phase;
            exact = [=](double t, double x) { return amp * std::cos(kappa * x + phase + omega * t); };
        } else {
            throw ConfigError("sweep requires a soliton or cosine initial condition");
        }
    } catch (const std::exception& e) {
        emit_error(e.what());
        return 1;
    }

    dvdm::ConvergenceTable table;
    try {
        table = dvdm::convergence_study(cfg.equation, exact, base, levels, cfg.solver,
                                        sweep_threads(levels));
    } catch (const std::exception& e) {
        emit_error(e.what());
        return 1;
    }

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file) {
            emit_error("cannot write " + out_path);
            return 1;
        }
        out = &file;
    }
    *out << "dx,dt,h1_error,order_estimate\n";
    bool all_ok = true;
    for (const auto& row : table) {
        *out << fmt(row.dx) << ',' << fmt(row.dt) << ',' << fmt(row.h1_error) << ','
             << fmt(row.order_estimate) << '\n';
        all_ok = all_ok && row.converged;
    }
    if (!quiet && !out_path.empty())
        std::cout << "wrote " << table.size() << " levels to " << out_path << "\n";
    if (!all_ok) emit_error("one or more sweep levels did not converge");
    return all_ok ? 0 : 2;
}

int cmd_check(const std::string& scope, std::uint64_t seed, bool quiet) {
    std::vector<dvdm::PropertyResult> results;
    if (scope == "operators" || scope == "all") {
        auto r = dvdm::check_operators(seed);
        results.insert(results.end(), r.begin(), r.end());
    }
    if (scope == "invariants" || scope == "all") {
        auto r = dvdm::check_invariants(seed);
        results.insert(results.end(), r.begin(), r.end());
    }
    if (scope == "bounds" || scope == "all") {
        auto r = dvdm::check_bounds(seed);
        results.insert(results.end(), r.begin(), r.end());
    }
    if (results.empty()) {
        emit_error("unknown check scope \"" + scope +
                   "\" (expected operators, invariants, bounds, or all)");
        return 1;
    }
    bool all_pass = true;
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        if (!quiet || !r.pass)
            std::cout << (r.pass ? "PASS " : "FAIL ") << r.name
                      << " worst=" << fmt(r.worst) << " tol=" << fmt(r.tolerance) << "\n";
    }
    return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy-conservative finite-difference solver for KdV-type equations"};
    app.require_subcommand(1);
    bool quiet = false;
    std::uint64_t seed = 20240601;
    app.add_flag("--quiet", quiet, "suppress informational output");
    app.add_option("--seed", seed, "seed for randomized check suites");

    std::string run_config;
    auto* run = app.add_subcommand("run", "run one simulation from a JSON config");
    run->fallthrough();
    run->add_option("config", run_config, "path to JSON config")->required();

    std::string sweep_config, sweep_out;
    int levels = 4;
    auto* sweep = app.add_subcommand("sweep", "convergence sweep, halving dx and dt");
    sweep->fallthrough();
    sweep->add_option("config", sweep_config, "path to JSON config")->required();
    sweep->add_option("--levels", levels, "number of refinement levels");
    sweep->add_option("--out", sweep_out, "CSV output path (default stdout)");

    std::string scope;
    auto* check = app.add_subcommand("check", "randomized property audits");
    check->fallthrough();
    check->add_option("scope", scope, "operators | invariants | bounds | all")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return cmd_run(run_config, quiet);
    if (sweep->parsed()) return cmd_sweep(sweep_config, levels, sweep_out, quiet);
    return cmd_check(scope, seed, quiet);
}
