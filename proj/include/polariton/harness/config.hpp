#pragma once

#include <cmath>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>
#include <yaml-cpp/yaml.h>

#include "polariton/analytic/gaussian.hpp"
#include "polariton/eit/params.hpp"
#include "polariton/eit/potential.hpp"
#include "polariton/harness/units.hpp"
#include "polariton/numeric/propagator.hpp"

namespace polariton {

enum class Solver { analytic, numeric, both };

inline Solver parse_solver(const std::string& s) {
    if (s == "analytic") return Solver::analytic;
    if (s == "numeric") return Solver::numeric;
    if (s == "both") return Solver::both;
    throw ConfigError("solver must be analytic, numeric or both, got '" + s + "'");
}

inline const char* solver_name(Solver s) {
    switch (s) {
    case Solver::analytic: return "analytic";
    case Solver::numeric: return "numeric";
    case Solver::both: return "both";
    }
    return "?";
}

struct NumericSettings {
    std::size_t nx = 512;
    std::size_t ny = 1;                 ///< 1 selects a 1-D grid
    std::optional<double> extent_x;     ///< half-width X; derived from the analytic path if unset
    std::optional<double> extent_y;
    std::optional<double> dt;           ///< upper bound on the step; the runner may refine
    double mask_strength = 0.0;
    bool require_edge_clear = true;
    PotentialSource potential = PotentialSource::exact;
};

struct SystemConfig {
    std::string scenario;  ///< tag, may be empty when given on the command line
    AtomicParams atom;
    CouplingParams coupling;
    FieldConfig field = UniformB{};
    GaussianSpec probe;
    double length = 0.1;  ///< medium length, m
    Solver solver = Solver::both;
    std::size_t samples = 50;
    int expansion_order = 1;
    NumericSettings numeric;
    YAML::Node tree;  ///< parsed source, kept for sweeps
};

namespace detail {

inline double q(const YAML::Node& n, const char* key, units::Dimension d, double fallback) {
    const auto v = n[key];
    if (!v) return fallback;
    try {
        return units::parse_quantity(v.as<std::string>(), d);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string(key) + ": " + e.what());
    }
}

inline std::optional<double> q_opt(const YAML::Node& n, const char* key, units::Dimension d) {
    if (!n[key]) return std::nullopt;
    return q(n, key, d, 0.0);
}

inline void check_keys(const YAML::Node& n, const std::string& section, std::initializer_list<const char*> keys) {
    if (!n) return;
    if (!n.IsMap()) throw ConfigError("section '" + section + "' must be a mapping");
    for (const auto& kv : n) {
        const auto k = kv.first.as<std::string>();
        bool known = false;
        for (const char* e : keys) known = known || k == e;
        if (!known) throw ConfigError("unknown key '" + section + "." + k + "'");
    }
}

}  // namespace detail

/// Builds a SystemConfig from a YAML tree. Every scalar may carry a unit suffix.
inline SystemConfig config_from_yaml(const YAML::Node& root) {
    using D = units::Dimension;
    using detail::q;
    if (!root.IsMap()) throw ConfigError("config root must be a mapping");
    detail::check_keys(root, "", {"scenario", "atom", "coupling", "field", "probe", "medium", "run", "numeric"});
    SystemConfig c;
    c.tree = YAML::Clone(root);
    if (root["scenario"]) c.scenario = root["scenario"].as<std::string>();

    const auto atom = root["atom"];
    detail::check_keys(atom, "atom", {"mF_g", "gF_g", "mF_s", "gF_s", "mu_g", "mu_s", "mu_e", "gamma1", "gamma2", "gamma3"});
    if (!atom) throw ConfigError("missing section 'atom'");
    const double g1 = q(atom, "gamma1", D::rate, 1.0);
    const double g2 = q(atom, "gamma2", D::rate, 0.0);
    const double g3 = q(atom, "gamma3", D::rate, 0.0);
    const double mue = q(atom, "mu_e", D::moment, 0.0);
    if (atom["mF_g"] || atom["gF_g"] || atom["mF_s"] || atom["gF_s"]) {
        QuantumNumbers qn{q(atom, "mF_g", D::dimensionless, 0.0), q(atom, "gF_g", D::dimensionless, 0.0),
                          q(atom, "mF_s", D::dimensionless, 0.0), q(atom, "gF_s", D::dimensionless, 0.0)};
        if (atom["mu_g"] || atom["mu_s"]) throw ConfigError("atom: give quantum numbers or moments, not both");
        c.atom = AtomicParams::from_quantum_numbers(qn, g1, g2, g3, mue);
    } else {
        c.atom.mu_g = q(atom, "mu_g", D::moment, 0.0);
        c.atom.mu_s = q(atom, "mu_s", D::moment, 0.0);
        c.atom.mu_e = mue;
        c.atom.gamma1 = g1;
        c.atom.gamma2 = g2;
        c.atom.gamma3 = g3;
    }

    const auto cp = root["coupling"];
    detail::check_keys(cp, "coupling", {"gsqrtN", "tan_theta", "Omega0", "nu", "k", "wavelength", "c"});
    if (!cp) throw ConfigError("missing section 'coupling'");
    c.coupling.Omega0 = q(cp, "Omega0", D::rate, 1.0);
    if (cp["gsqrtN"] && cp["tan_theta"]) throw ConfigError("coupling: give gsqrtN or tan_theta, not both");
    if (cp["tan_theta"])
        c.coupling.gsqrtN = q(cp, "tan_theta", D::dimensionless, 0.0) * c.coupling.Omega0;
    else
        c.coupling.gsqrtN = q(cp, "gsqrtN", D::rate, 0.0);
    c.coupling.nu = q(cp, "nu", D::rate, 0.0);
    if (cp["k"] && cp["wavelength"]) throw ConfigError("coupling: give k or wavelength, not both");
    if (cp["wavelength"])
        c.coupling.k = constants::two_pi / q(cp, "wavelength", D::length, 1.0);
    else
        c.coupling.k = q(cp, "k", D::inverse_length, 1.0);
    c.coupling.c = q(cp, "c", D::speed, constants::speed_of_light);

    const auto f = root["field"];
    detail::check_keys(f, "field", {"type", "B0", "B1", "Bx", "By", "sigma_x", "sigma_y", "Delta"});
    if (!f || !f["type"]) throw ConfigError("field.type is required");
    const auto type = f["type"].as<std::string>();
    if (type == "uniform") {
        c.field = UniformB{q(f, "B0", D::magnetic_field, 0.0)};
    } else if (type == "linear") {
        c.field = LinearB{q(f, "B0", D::magnetic_field, 0.0), q(f, "B1", D::field_gradient, 0.0)};
    } else if (type == "harmonic") {
        c.field = HarmonicB{q(f, "B0", D::magnetic_field, 0.0), q(f, "Bx", D::field_curvature, -1.0),
                            q(f, "By", D::field_curvature, -1.0)};
    } else if (type == "gaussian-control") {
        GaussianControl g;
        g.sigma_x = q(f, "sigma_x", D::length, 1.0);
        g.sigma_y = detail::q_opt(f, "sigma_y", D::length);
        if (f["Delta"] && f["B0"]) throw ConfigError("field: give Delta or B0 for the control beam, not both");
        if (f["Delta"])
            g.shift = TwoPhotonDetuning{q(f, "Delta", D::rate, 0.0)};
        else
            g.shift = MagneticShift{q(f, "B0", D::magnetic_field, 0.0)};
        c.field = g;
    } else {
        throw ConfigError("field.type must be uniform, linear, harmonic or gaussian-control");
    }
    validate_field(c.field);

    const auto p = root["probe"];
    detail::check_keys(p, "probe", {"width", "width_x", "width_y", "width_z", "alpha_x", "alpha_y", "alpha_z",
                                    "center_x", "center_y"});
    if (!p) throw ConfigError("missing section 'probe'");
    // exp(-alpha chi^2 / 2) per axis, from a width 1/sqrt(alpha) or alpha itself
    const double w = q(p, "width", D::length, 1e-3);
    auto alpha = [&](const char* width_key, const char* alpha_key) {
        if (p[width_key] && p[alpha_key])
            throw ConfigError(std::string("probe: give ") + width_key + " or " + alpha_key + ", not both");
        if (p[alpha_key]) return q(p, alpha_key, D::inverse_area, 0.0);
        const double wj = q(p, width_key, D::length, w);
        return wj > 0.0 ? 1.0 / (wj * wj) : 0.0;
    };
    c.probe = {alpha("width_x", "alpha_x"), alpha("width_y", "alpha_y"), alpha("width_z", "alpha_z"),
               q(p, "center_x", D::length, 0.0), q(p, "center_y", D::length, 0.0)};
    if (!(c.probe.alpha_x > 0 && c.probe.alpha_y > 0 && c.probe.alpha_z > 0) ||
        !std::isfinite(c.probe.alpha_x * c.probe.alpha_y * c.probe.alpha_z))
        throw ConfigError("probe widths must be > 0");

    const auto m = root["medium"];
    detail::check_keys(m, "medium", {"length"});
    c.length = q(m, "length", D::length, 0.1);
    if (!(c.length > 0.0)) throw ConfigError("medium.length must be > 0");

    const auto r = root["run"];
    detail::check_keys(r, "run", {"solver", "samples", "expansion_order"});
    if (r && r["solver"]) c.solver = parse_solver(r["solver"].as<std::string>());
    if (r && r["samples"]) c.samples = r["samples"].as<std::size_t>();
    if (r && r["expansion_order"]) c.expansion_order = r["expansion_order"].as<int>();
    if (c.samples < 3) throw ConfigError("run.samples must be >= 3");
    if (c.expansion_order != 1 && c.expansion_order != 2) throw ConfigError("run.expansion_order must be 1 or 2");

    const auto n = root["numeric"];
    detail::check_keys(n, "numeric", {"grid", "grid_y", "extent_x", "extent_y", "dt", "mask_strength",
                                      "require_edge_clear", "potential"});
    if (n) {
        if (n["grid"]) c.numeric.nx = n["grid"].as<std::size_t>();
        if (n["grid_y"]) c.numeric.ny = n["grid_y"].as<std::size_t>();
        c.numeric.extent_x = detail::q_opt(n, "extent_x", D::length);
        c.numeric.extent_y = detail::q_opt(n, "extent_y", D::length);
        c.numeric.dt = detail::q_opt(n, "dt", D::time);
        c.numeric.mask_strength = q(n, "mask_strength", D::dimensionless, 0.0);
        if (n["require_edge_clear"]) c.numeric.require_edge_clear = n["require_edge_clear"].as<bool>();
        if (n["potential"]) {
            const auto s = n["potential"].as<std::string>();
            if (s == "exact") c.numeric.potential = PotentialSource::exact;
            else if (s == "expansion") c.numeric.potential = PotentialSource::expansion;
            else throw ConfigError("numeric.potential must be exact or expansion");
        }
    }
    c.atom.validate();
    c.coupling.validate();
    return c;
}

inline SystemConfig load_config(const std::string& path) {
    try {
        return config_from_yaml(YAML::LoadFile(path));
    } catch (const YAML::Exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

inline SystemConfig parse_config(const std::string& text) {
    try {
        return config_from_yaml(YAML::Load(text));
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

/// Sets the scalar at a dotted path ("field.B1") in a copy of the tree.
inline YAML::Node with_value(const YAML::Node& tree, const std::string& path, const std::string& value) {
    YAML::Node root = YAML::Clone(tree);
    std::vector<std::string> parts;
    std::stringstream ss(path);
    for (std::string p; std::getline(ss, p, '.');) parts.push_back(p);
    if (parts.empty()) throw ConfigError("empty parameter path");
    std::vector<YAML::Node> chain{root};
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        YAML::Node next = chain.back()[parts[i]];
        if (!next.IsMap()) throw ConfigError("parameter path '" + path + "' does not resolve to a section");
        chain.push_back(next);
    }
    chain.back()[parts.back()] = value;
    return root;
}

/// SI-normalized snapshot: identical physics gives identical JSON regardless of key order or
/// unit spelling in the source (up to the rounding of unit conversions). The snapshot is itself
/// a valid config, since YAML reads JSON.
inline nlohmann::json canonical_json(const SystemConfig& c) {
    using nlohmann::json;
    json j;
    j["scenario"] = c.scenario;
    j["atom"] = {{"mu_g", c.atom.mu_g}, {"mu_s", c.atom.mu_s}, {"mu_e", c.atom.mu_e},
                 {"gamma1", c.atom.gamma1}, {"gamma2", c.atom.gamma2}, {"gamma3", c.atom.gamma3}};
    j["coupling"] = {{"gsqrtN", c.coupling.gsqrtN}, {"Omega0", c.coupling.Omega0}, {"nu", c.coupling.nu},
                     {"k", c.coupling.k}, {"c", c.coupling.c}};
    std::visit(
        [&](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, UniformB>) {
                j["field"] = {{"type", "uniform"}, {"B0", f.B0}};
            } else if constexpr (std::is_same_v<F, LinearB>) {
                j["field"] = {{"type", "linear"}, {"B0", f.B0}, {"B1", f.B1}};
            } else if constexpr (std::is_same_v<F, HarmonicB>) {
                j["field"] = {{"type", "harmonic"}, {"B0", f.B0}, {"Bx", f.Bx}, {"By", f.By}};
            } else {
                j["field"] = {{"type", "gaussian-control"}, {"sigma_x", f.sigma_x}};
                if (f.sigma_y) j["field"]["sigma_y"] = *f.sigma_y;
                if (const auto* m = std::get_if<MagneticShift>(&f.shift)) j["field"]["B0"] = m->B;
                else j["field"]["Delta"] = std::get<TwoPhotonDetuning>(f.shift).Delta;
            }
        },
        c.field);
    j["probe"] = {{"alpha_x", c.probe.alpha_x}, {"alpha_y", c.probe.alpha_y}, {"alpha_z", c.probe.alpha_z},
                  {"center_x", c.probe.a_x}, {"center_y", c.probe.a_y}};
    j["medium"] = {{"length", c.length}};
    j["run"] = {{"solver", solver_name(c.solver)}, {"samples", c.samples}, {"expansion_order", c.expansion_order}};
    json n = {{"grid", c.numeric.nx}, {"grid_y", c.numeric.ny}, {"mask_strength", c.numeric.mask_strength},
              {"require_edge_clear", c.numeric.require_edge_clear},
              {"potential", c.numeric.potential == PotentialSource::exact ? "exact" : "expansion"}};
    if (c.numeric.extent_x) n["extent_x"] = *c.numeric.extent_x;
    if (c.numeric.extent_y) n["extent_y"] = *c.numeric.extent_y;
    if (c.numeric.dt) n["dt"] = *c.numeric.dt;
    j["numeric"] = n;
    return j;
}

inline std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx, md, &len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw Error("sha256: digest failed");
    }
    EVP_MD_CTX_free(ctx);
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return out.str();
}

/// nlohmann::json objects keep keys sorted, so the dump is canonical.
inline std::string config_hash(const SystemConfig& c) { return sha256_hex(canonical_json(c).dump()); }

}  // namespace polariton
