// polariton: run scenarios, sweeps and solver comparisons from YAML configs.

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <yaml-cpp/yaml.h>

#include "polariton/harness/record.hpp"
#include "polariton/harness/scenario.hpp"
#include "polariton/harness/sweep.hpp"
#include "polariton/numeric/checkpoint.hpp"

#ifndef POLARITON_CONFIG_DIR
#define POLARITON_CONFIG_DIR "configs"
#endif

namespace fs = std::filesystem;
using namespace polariton;

namespace {

enum ExitCode { ok = 0, other = 1, config_error = 2, guard_failure = 3, numerical_failure = 4 };

struct Options {
    std::string config;
    std::string out = "out";
    std::optional<std::string> solver;
    std::optional<std::size_t> samples;
    std::optional<std::size_t> grid;
    std::optional<std::string> dt;
    std::string checkpoint;
    std::string tag;
    std::string param;
    std::vector<std::string> values;
};

YAML::Node load_tree(const std::string& path) {
    try {
        return YAML::LoadFile(path);
    } catch (const YAML::Exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

// Command-line flags are written into the tree so the record's hash covers them.
SystemConfig resolve(const Options& o, const std::string& path, std::optional<Solver> forced) {
    YAML::Node tree = load_tree(path);
    if (!tree.IsMap()) throw ConfigError(path + ": config root must be a mapping");
    auto set = [&](const char* section, const char* key, const std::string& v) {
        if (!tree[section]) tree[section] = YAML::Node(YAML::NodeType::Map);
        tree = with_value(tree, std::string(section) + "." + key, v);
    };
    if (o.samples) set("run", "samples", std::to_string(*o.samples));
    if (o.grid) set("numeric", "grid", std::to_string(*o.grid));
    if (o.dt) set("numeric", "dt", *o.dt);
    if (forced) set("run", "solver", solver_name(*forced));
    else if (o.solver) set("run", "solver", *o.solver);
    try {
        return config_from_yaml(tree);
    } catch (const YAML::Exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::string default_config(const std::string& tag) {
    if (!is_scenario_tag(tag)) throw ConfigError("unknown scenario tag '" + tag + "'");
    return (fs::path(POLARITON_CONFIG_DIR) / (tag + ".yaml")).string();
}

Scenario scenario_for(const SystemConfig& c, const std::string& tag) {
    auto s = Scenario::from_config(c);
    if (!tag.empty()) s.tag = tag;
    if (s.tag.empty()) throw ConfigError("config has no 'scenario' tag");
    return s;
}

int finish(const Options& o, const RunRecord& r) {
    const fs::path dir(o.out);
    const auto stem = write_run_outputs(dir, r);
    RecordAppender(dir / "records.jsonl").append(to_json(r));
    if (!o.checkpoint.empty()) {
        if (!r.final_state) throw ConfigError("--checkpoint needs a numeric solver");
        write_checkpoint(o.checkpoint, *r.final_state);
    }
    nlohmann::json j{{"scenario", r.tag}, {"solver", solver_name(r.solver)}, {"config_hash", r.config_hash},
                     {"outputs", (dir / stem).string()}, {"summary", r.summary},
                     {"warnings", r.diagnostics["warnings"]}};
    std::cout << j.dump(2) << "\n";
    return ok;
}

int run_with(const Options& o, std::optional<Solver> forced) {
    if (o.config.empty()) throw ConfigError("--config is required");
    const auto c = resolve(o, o.config, forced);
    return finish(o, run_scenario(scenario_for(c, o.tag)));
}

int cmd_derive(const Options& o) {
    if (o.config.empty()) throw ConfigError("--config is required");
    const auto c = resolve(o, o.config, std::nullopt);
    const auto p = derive_polariton_params(c.atom, c.coupling);
    nlohmann::json j{{"theta", p.theta},   {"tan_theta", std::tan(p.theta)}, {"v_g", p.v_g},
                     {"m_eff", p.m_eff},   {"m_prime", p.m_prime},           {"mu", p.mu},
                     {"mu_pol", p.mu_pol}, {"k", p.k},                       {"c", p.c},
                     {"transit_time", c.length / p.v_g}};
    const auto model = build_potential(c.field, p, c.coupling, c.atom.gamma2);
    if (model.frame() == Frame::light) {
        const auto e = expand_induced_potential(model, c.probe.a_x, c.probe.a_y, 2);
        j["expansion"] = {{"V", {e.constant.real(), e.constant.imag()}},
                          {"c1_x", {e.x.c1.real(), e.x.c1.imag()}},
                          {"c2_x", {e.x.c2.real(), e.x.c2.imag()}}};
    }
    std::cout << j.dump(2) << "\n";
    return ok;
}

int cmd_sweep(const Options& o) {
    const std::string path = o.config.empty() ? default_config(o.tag) : o.config;
    const auto c = resolve(o, path, std::nullopt);
    const auto base = scenario_for(c, o.tag);
    const fs::path dir(o.out);
    fs::create_directories(dir);
    RecordAppender appender(dir / "records.jsonl");
    const auto rows = sweep(base, o.param, o.values, &appender, sweep_threads());
    const auto table = sweep_table_csv(rows);
    write_text(dir / "sweep.csv", table);
    std::cout << table;
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dark-state polariton transport: analytic and split-step solvers"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub, bool config_required) {
        auto* opt = sub->add_option("--config", o.config, "YAML config file");
        if (config_required) opt->required();
        sub->add_option("--out", o.out, "output directory")->capture_default_str();
        sub->add_option("--samples", o.samples, "trajectory samples");
        sub->add_option("--grid", o.grid, "transverse grid points (power of two)");
        sub->add_option("--dt", o.dt, "upper bound on the time step, e.g. '1 ns'");
    };

    auto* derive = app.add_subcommand("derive", "print polariton parameters for a config");
    derive->add_option("--config", o.config, "YAML config file")->required();
    auto* analytic = app.add_subcommand("analytic", "closed-form evolution only");
    common(analytic, true);
    auto* propagate = app.add_subcommand("propagate", "split-step propagation only");
    common(propagate, true);
    propagate->add_option("--checkpoint", o.checkpoint, "write the final wavefunction here");
    auto* compare = app.add_subcommand("compare", "run both solvers and record their difference");
    common(compare, true);
    auto* scenario = app.add_subcommand("scenario", "run a named scenario");
    scenario->add_option("tag", o.tag, "scenario tag")->required();
    common(scenario, false);
    scenario->add_option("--solver", o.solver, "analytic, numeric or both");
    scenario->add_option("--checkpoint", o.checkpoint, "write the final wavefunction here");
    auto* sw = app.add_subcommand("sweep", "vary one config parameter across runs");
    common(sw, false);
    sw->add_option("--tag", o.tag, "scenario tag (default config from the config directory)");
    sw->add_option("--solver", o.solver, "analytic, numeric or both");
    sw->add_option("--param", o.param, "dotted parameter path, e.g. field.B1")->required();
    sw->add_option("--values", o.values, "values, comma separated")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return config_error;
    }

    try {
        if (*derive) return cmd_derive(o);
        if (*analytic) return run_with(o, Solver::analytic);
        if (*propagate) return run_with(o, Solver::numeric);
        if (*compare) return run_with(o, Solver::both);
        if (*scenario) {
            if (o.config.empty()) o.config = default_config(o.tag);
            return run_with(o, std::nullopt);
        }
        if (*sw) return cmd_sweep(o);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const GuardFailure& e) {
        std::cerr << "guard failure [" << e.guard() << "]: " << e.what() << "\n";
        return guard_failure;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return numerical_failure;
    } catch (const SingularityError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return numerical_failure;
    } catch (const FitError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return numerical_failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return other;
    }
    return other;
}
