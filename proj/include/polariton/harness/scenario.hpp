#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "polariton/analytic/evolution.hpp"
#include "polariton/analytic/wei_norman.hpp"
#include "polariton/harness/config.hpp"
#include "polariton/harness/record.hpp"
#include "polariton/numeric/propagator.hpp"
#include "polariton/observables/fit.hpp"

namespace polariton {

inline constexpr std::array<const char*, 6> scenario_tags{
    "harmonic-b", "linear-b", "gaussian-control", "gaussian-control-detuned", "gaussian-control-dephased",
    "quadratic-control"};

inline bool is_scenario_tag(const std::string& tag) {
    return std::find(scenario_tags.begin(), scenario_tags.end(), tag) != scenario_tags.end();
}

struct Scenario {
    std::string tag;
    SystemConfig config;
    Solver solver = Solver::both;

    /// Tag and solver from the config itself.
    static Scenario from_config(SystemConfig c) {
        Scenario s{c.scenario, std::move(c), Solver::both};
        s.solver = s.config.solver;
        return s;
    }
};

/// The tag fixes which field variant, level shift, and expansion order are legal.
inline void validate_scenario(const Scenario& s) {
    if (!is_scenario_tag(s.tag)) throw ConfigError("unknown scenario tag '" + s.tag + "'");
    const auto& c = s.config;
    const auto* gc = std::get_if<GaussianControl>(&c.field);
    auto need = [&](bool ok, const std::string& what) {
        if (!ok) throw ConfigError("scenario " + s.tag + ": " + what);
    };
    if (s.tag == "harmonic-b") {
        need(std::holds_alternative<HarmonicB>(c.field), "field.type must be harmonic");
        need(c.probe.a_x == 0.0 && c.probe.a_y == 0.0, "the packet must start on the trap axis");
    } else if (s.tag == "linear-b") {
        need(std::holds_alternative<LinearB>(c.field), "field.type must be linear");
    } else {
        need(gc != nullptr, "field.type must be gaussian-control");
        need(c.coupling.gsqrtN > 0.0, "the control beam needs a medium (gsqrtN > 0)");
        if (s.tag == "gaussian-control") {
            need(std::holds_alternative<MagneticShift>(gc->shift), "the level shift must be a field B0");
            need(c.atom.gamma2 == 0.0, "gamma2 must be 0 (use gaussian-control-dephased)");
        } else if (s.tag == "gaussian-control-detuned") {
            need(std::holds_alternative<TwoPhotonDetuning>(gc->shift), "the level shift must be a detuning Delta");
            need(c.atom.gamma2 == 0.0, "gamma2 must be 0 (use gaussian-control-dephased)");
        } else if (s.tag == "gaussian-control-dephased") {
            need(c.atom.gamma2 > 0.0, "atom.gamma2 must be > 0");
        }
    }
}

namespace detail {

struct ScenarioSetup {
    PolaritonParams pol;
    PotentialModel model;
    double mass = 0.0;
    double speed = 0.0;
    double transit = 0.0;  ///< L / speed
    std::vector<double> times;
    std::optional<PotentialExpansion> expansion;
};

inline ScenarioSetup make_setup(const Scenario& s) {
    const auto& c = s.config;
    const auto pol = derive_polariton_params(c.atom, c.coupling);
    auto model = build_potential(c.field, pol, c.coupling, c.atom.gamma2);
    const bool light = model.frame() == Frame::light;
    ScenarioSetup st{pol, model, light ? pol.m_prime : pol.m_eff, light ? pol.c : pol.v_g, 0.0, {}, std::nullopt};
    st.transit = c.length / st.speed;
    for (std::size_t i = 0; i <= c.samples; ++i)
        st.times.push_back(st.transit * static_cast<double>(i) / static_cast<double>(c.samples));
    if (light) {
        const int order = s.tag == "quadratic-control" ? 2 : c.expansion_order;
        st.expansion = expand_induced_potential(st.model, c.probe.a_x, c.probe.a_y, order);
        st.model.set_expansion(*st.expansion);
    }
    return st;
}

/// Packet moments for H = P^2/2m + c1 (chi - a) + constant along each axis, from the Wei-Norman
/// factors acting on complex Gaussians (exact for complex c1).
inline TrajectoryPoint linear_expansion_point(double t, const PotentialExpansion& e, const GaussianSpec& spec,
                                              double mass, double speed, bool two_d) {
    const cplx p2(1.0 / (2.0 * mass));
    const auto gx = apply_factored(wei_norman_closed_form(t, {p2, {}, e.x.c1, e.constant - e.x.c1 * e.ax}),
                                   ComplexGaussian1D::normalized(spec.alpha_x, spec.a_x));
    const auto gy = apply_factored(wei_norman_closed_form(t, {p2, {}, two_d ? e.y.c1 : cplx{}, two_d ? -e.y.c1 * e.ay : cplx{}}),
                                   ComplexGaussian1D::normalized(spec.alpha_y, spec.a_y));
    TrajectoryPoint p;
    p.t = t;
    p.x = gx.mean();
    p.y = gy.mean();
    p.z = speed * t;
    p.var_x = gx.variance();
    p.var_y = gy.variance();
    p.var_z = 1.0 / (2.0 * spec.alpha_z);
    p.norm = gx.norm() * gy.norm();
    return p;
}

/// "left" is toward -x. Shifts below 1e-9 packet widths count as none (roundoff on symmetric runs).
inline const char* bend_label(double shift, double width) {
    if (std::abs(shift) <= 1e-9 * width) return "none";
    return shift < 0.0 ? "left" : "right";
}

inline std::vector<TrajectoryPoint> analytic_series(const Scenario& s, const ScenarioSetup& st,
                                                    nlohmann::json& summary) {
    const auto& c = s.config;
    const auto& spec = c.probe;
    std::vector<TrajectoryPoint> out;
    const double T = st.transit;
    if (s.tag == "harmonic-b") {
        const auto [wx, wy] = harmonic_frequencies(std::get<HarmonicB>(c.field), st.pol);
        for (double t : st.times) out.push_back(harmonic_observables(t, spec, st.pol, wx, wy));
        summary["omega_x"] = wx;
        summary["omega_y"] = wy;
        summary["variance_period_x"] = constants::pi / wx;
        const auto h = hermite_expansion(spec.alpha_x, st.pol.m_eff, wx);
        summary["hermite_tail_mass_x"] = h.tail_mass;
    } else if (s.tag == "linear-b") {
        const double B1 = std::get<LinearB>(c.field).B1;
        const double zeta = B1 * std::sin(st.pol.theta) * std::sin(st.pol.theta);
        for (double t : st.times) out.push_back(linear_gradient_observables(t, spec, st.pol, zeta).point);
        const auto exit = linear_gradient_observables(T, spec, st.pol, zeta);
        summary["deflection_angle"] = deflection_angle(st.pol, B1, c.length);
        summary["exit_velocity"] = exit.v_x;
        summary["resolution"] = exit.resolution;
        summary["semiclassical_shift"] = semiclassical_shift(st.pol, B1, c.length);
    } else if (s.tag == "quadratic-control") {
        bool unbound = false;
        for (double t : st.times) {
            const auto q = quadratic_trajectory(t, *st.expansion, spec, st.mass, st.speed);
            unbound = unbound || q.unbound_x || (st.model.two_dimensional() && q.unbound_y);
            out.push_back(q.point);
            summary["omega_x"] = q.omega_x;
            if (st.model.two_dimensional()) summary["omega_y"] = q.omega_y;
        }
        summary["unbound"] = unbound;
        if (!unbound) {
            const auto d = displaced_oscillator_params(st.expansion->zeta_x1(), st.expansion->zeta_x2(), st.mass);
            summary["equilibrium_shift_x"] = d.equilibrium_shift;
            summary["beta_x"] = d.beta;
        }
    } else {
        const bool two_d = st.model.two_dimensional();
        for (double t : st.times) out.push_back(linear_expansion_point(t, *st.expansion, spec, st.mass, st.speed, two_d));
        if (s.tag == "gaussian-control-dephased") {
            // closed-form exit position for the complex first-order expansion
            for (auto& p : out) p.x = dephasing_trajectory(p.t, *st.expansion, spec.width_x(), c.coupling.k, spec.a_x, st.speed);
            const auto d = dephasing_coefficients(st.expansion->a1(), st.expansion->b1(), spec.width_x(), c.coupling.k, st.speed);
            summary["dephasing_c1"] = d.c1;
            summary["dephasing_c2"] = d.c2;
            summary["dephasing_c3"] = d.c3;
        } else {
            summary["mirage_shift"] =
                control_beam_shift(spec.a_x, std::get<GaussianControl>(c.field).sigma_x, st.model.strength(),
                                   st.model.detuning(), c.length, c.coupling.k, st.speed) - spec.a_x;
        }
        summary["eta1_prime"] = {st.expansion->x.c1.real(), st.expansion->x.c1.imag()};
    }
    const auto& last = out.back();
    summary["exit_center_x"] = last.x;
    summary["exit_center_y"] = last.y;
    summary["exit_shift_x"] = last.x - spec.a_x;
    summary["bend"] = bend_label(last.x - spec.a_x, spec.width_x());
    return out;
}

/// Half-width covering the analytic path plus six widths on each side, so the packet stays out of
/// the outer 10% of the grid that the edge guard watches.
inline double auto_extent(const std::vector<TrajectoryPoint>& series, double a, double var0, bool y_axis) {
    double x = std::abs(a) + 6.0 * std::sqrt(2.0 * var0);
    for (const auto& p : series) {
        const double c = y_axis ? p.y : p.x;
        const double v = y_axis ? p.var_y : p.var_x;
        x = std::max(x, std::abs(c) + 6.0 * std::sqrt(2.0 * v));
    }
    return 1.25 * x;
}

/// Largest |k| the packet reaches along one axis: the mean momentum m dx/dt from the analytic path
/// plus six momentum widths. `squeeze` is lambda/alpha for a trapped axis (1 when free).
inline double momentum_reach(const std::vector<TrajectoryPoint>& series, double mass, double alpha, double squeeze,
                             bool y_axis) {
    double k = 0.0;
    for (std::size_t i = 1; i + 1 < series.size(); ++i) {
        const double dx = y_axis ? series[i + 1].y - series[i - 1].y : series[i + 1].x - series[i - 1].x;
        k = std::max(k, mass * std::abs(dx) / (series[i + 1].t - series[i - 1].t));
    }
    // var_k = alpha/2 initially; a trap of stiffness lambda = m omega swings it up to lambda^2/(2 alpha)
    const double var_k = 0.5 * alpha * std::max(1.0, squeeze * squeeze);
    return k + 6.0 * std::sqrt(var_k);
}

/// An auto-sized axis must hold both the path and the momentum reach: k_max = pi n / 2X has to clear
/// the reach by the same 10% band margin.
inline void check_axis_resolution(const std::string& tag, const char* axis, std::size_t n, double X, double reach) {
    const double k_max = constants::pi * static_cast<double>(n) / (2.0 * X);
    if (1.25 * reach <= k_max) return;
    const double need = 2.0 * X * 1.25 * reach / constants::pi;
    std::size_t suggest = 8;
    while (static_cast<double>(suggest) < need) suggest *= 2;
    throw ConfigError("scenario " + tag + ": " + std::to_string(n) + " points along " + axis +
                      " cannot hold both the packet path and its momentum; use at least " +
                      std::to_string(suggest));
}

inline constexpr std::size_t max_numeric_steps = 4000000;

inline std::vector<TrajectoryPoint> numeric_series(const Scenario& s, const ScenarioSetup& st,
                                                   const std::vector<TrajectoryPoint>& analytic,
                                                   nlohmann::json& diag, std::optional<WavepacketState>& final_state) {
    const auto& c = s.config;
    const auto& n = c.numeric;
    const bool two_d = st.model.two_dimensional() || n.ny > 1;
    if (st.model.two_dimensional() && n.ny < 8)
        throw ConfigError("scenario " + s.tag + ": potential depends on y, set numeric.grid_y >= 8");
    const double X = n.extent_x.value_or(auto_extent(analytic, c.probe.a_x, 0.5 / c.probe.alpha_x, false));
    const double Y = n.extent_y.value_or(auto_extent(analytic, c.probe.a_y, 0.5 / c.probe.alpha_y, true));
    auto squeeze = [&](bool y_axis) {
        const double alpha = y_axis ? c.probe.alpha_y : c.probe.alpha_x;
        if (const auto* h = std::get_if<HarmonicB>(&c.field)) {
            const auto [wx, wy] = harmonic_frequencies(*h, st.pol);
            return st.mass * (y_axis ? wy : wx) / alpha;
        }
        if (st.expansion && st.expansion->order == 2) {
            const double z2 = y_axis ? st.expansion->zeta_y2() : st.expansion->zeta_x2();
            if (z2 > 0.0) return st.mass * std::sqrt(2.0 * z2 / st.mass) / alpha;
        }
        return 1.0;
    };
    if (!n.extent_x)
        check_axis_resolution(s.tag, "x", n.nx, X, momentum_reach(analytic, st.mass, c.probe.alpha_x, squeeze(false), false));
    if (two_d && !n.extent_y)
        check_axis_resolution(s.tag, "y", n.ny, Y, momentum_reach(analytic, st.mass, c.probe.alpha_y, squeeze(true), true));
    const auto grid = two_d ? TransverseGrid::two_d(n.nx, X, n.ny, Y) : TransverseGrid::one_d(n.nx, X);
    bool padding = true;
    const auto state = initialize_gaussian(grid, c.probe, &padding);
    if (!padding) diag["warnings"].push_back("grid extent is below 8 packet widths");

    SplitStepSystem sys;
    sys.potential = sample_potential(st.model, grid, n.potential);
    sys.mass_x = sys.mass_y = st.mass;
    sys.speed = st.speed;

    // Step: one sample interval at most, aliasing phase <= pi/4, potential phase <= 0.1.
    const double sample_dt = st.transit / static_cast<double>(c.samples);
    double kin = grid.kx_max() * grid.kx_max() / (2.0 * st.mass);
    if (two_d) kin += grid.ky_max() * grid.ky_max() / (2.0 * st.mass);
    double dt = std::min(sample_dt, 0.25 * constants::pi / kin);
    const auto v_ref = st.model(c.probe.a_x, two_d ? c.probe.a_y : 0.0);
    double spread = 0.0;
    for (const auto& v : sys.potential) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NumericalFailure("scenario " + s.tag + ": potential is not finite on the grid", 0);
        spread = std::max(spread, std::abs(v - v_ref));
    }
    if (spread > 0.0) dt = std::min(dt, 0.1 / spread);
    if (n.dt) dt = std::min(dt, *n.dt);
    const auto per_sample = static_cast<std::size_t>(std::ceil(sample_dt / dt * (1.0 - 1e-12)));
    const std::size_t steps = per_sample * c.samples;
    if (steps > max_numeric_steps)
        throw ConfigError("numeric run needs " + std::to_string(steps) +
                          " steps; coarsen numeric.grid or shorten medium.length");

    PropagatorConfig pc;
    pc.steps = steps;
    pc.dt = st.transit / static_cast<double>(steps);
    pc.sample_every = per_sample;
    pc.mask_strength = n.mask_strength;
    pc.require_edge_clear = n.require_edge_clear;
    auto r = split_step_propagate(state, sys, pc);

    diag["grid"] = {{"nx", grid.nx()}, {"ny", grid.ny()}, {"extent_x", X}, {"dx", grid.dx()}};
    if (two_d) {
        diag["grid"]["extent_y"] = Y;
        diag["grid"]["dy"] = grid.dy();
    }
    diag["dt"] = pc.dt;
    diag["steps"] = steps;
    diag["potential"] = n.potential == PotentialSource::exact ? "exact" : "expansion";
    diag["aliasing_phase"] = r.diagnostics.aliasing_phase;
    diag["potential_phase"] = r.diagnostics.potential_phase;
    diag["max_edge_mass"] = r.diagnostics.max_edge_mass;
    diag["max_spectral_edge_mass"] = r.diagnostics.max_spectral_edge_mass;
    diag["initial_norm"] = r.diagnostics.initial_norm;
    diag["final_norm"] = r.diagnostics.final_norm;
    diag["norm_non_increasing"] = r.diagnostics.norm_non_increasing;
    for (const auto& w : r.diagnostics.warnings) diag["warnings"].push_back(w);
    final_state = std::move(r.final_state);
    return std::move(r.series);
}

inline void numeric_summary(const Scenario& s, const ScenarioSetup& st, const std::vector<TrajectoryPoint>& num,
                            nlohmann::json& summary) {
    const auto& last = num.back();
    const double a = s.config.probe.a_x;
    summary["exit_center_x"] = last.x;
    summary["exit_center_y"] = last.y;
    summary["exit_shift_x"] = last.x - a;
    summary["bend"] = bend_label(last.x - a, s.config.probe.width_x());
    summary["exit_norm"] = last.norm;
    std::vector<double> t, x, vx;
    for (const auto& p : num) {
        t.push_back(p.t);
        x.push_back(p.x);
        vx.push_back(p.var_x);
    }
    if (s.tag == "linear-b") {
        const auto f = fit_deflection(num, st.speed);
        summary["deflection_angle"] = f.angle;
        summary["exit_velocity"] = f.v_x;
        summary["fit_residual"] = f.residual;
        summary["resolution"] = (last.x - a) / std::sqrt(last.var_x);
    } else if (s.tag == "harmonic-b") {
        const auto [wx, wy] = harmonic_frequencies(std::get<HarmonicB>(s.config.field), st.pol);
        (void)wy;
        const auto f = fit_oscillation(t, vx, 1.0 * wx, 3.0 * wx);
        summary["variance_frequency_x"] = f.omega;
        summary["variance_period_x"] = constants::two_pi / f.omega;
        summary["fit_residual"] = f.residual;
    } else if (s.tag == "quadratic-control" && st.expansion && st.expansion->zeta_x2() > 0.0) {
        const double w = std::sqrt(2.0 * st.expansion->zeta_x2() / st.mass);
        const auto f = fit_oscillation(t, x, 0.5 * w, 1.5 * w);
        summary["omega_x"] = f.omega;
        summary["fit_residual"] = f.residual;
    }
}

}  // namespace detail

/// Runs the solvers the scenario asks for and assembles a RunRecord. Guard failures propagate
/// (GuardFailure names the guard); "both" adds analytic-versus-numeric metrics.
inline RunRecord run_scenario(const Scenario& s) {
    const auto start = std::chrono::steady_clock::now();
    validate_scenario(s);
    RunRecord r;
    r.tag = s.tag;
    r.solver = s.solver;
    auto snapshot = s.config;
    snapshot.scenario = s.tag;
    snapshot.solver = s.solver;
    r.config = canonical_json(snapshot);
    r.config_hash = config_hash(snapshot);
    r.diagnostics["warnings"] = nlohmann::json::array();

    const auto st = detail::make_setup(s);
    r.summary["polariton"] = {{"theta", st.pol.theta}, {"v_g", st.pol.v_g}, {"m_eff", st.pol.m_eff},
                              {"m_prime", st.pol.m_prime}, {"mu_pol", st.pol.mu_pol}, {"transit_time", st.transit}};
    nlohmann::json analytic_summary;
    // The analytic path also sizes the numeric grid, so it always runs.
    auto analytic = detail::analytic_series(s, st, analytic_summary);
    if (s.solver != Solver::numeric) {
        r.analytic = analytic;
        r.summary["analytic"] = analytic_summary;
    }
    if (s.solver != Solver::analytic) {
        r.numeric = detail::numeric_series(s, st, analytic, r.diagnostics, r.final_state);
        nlohmann::json ns;
        detail::numeric_summary(s, st, r.numeric, ns);
        r.summary["numeric"] = ns;
    }
    if (s.solver == Solver::both) {
        const double diff = std::abs(r.numeric.back().x - analytic.back().x);
        const double shift = std::abs(analytic.back().x - s.config.probe.a_x);
        const double cell = r.diagnostics["grid"]["dx"].get<double>();
        nlohmann::json cmp;
        cmp["exit_center_difference"] = diff;
        cmp["relative_to_shift"] = shift > 0.0 ? diff / shift : 0.0;
        cmp["within_tolerance"] = shift > cell ? diff < 0.01 * shift : diff < cell;
        double var_err = 0.0;
        for (std::size_t i = 0; i < std::min(r.numeric.size(), analytic.size()); ++i)
            var_err = std::max(var_err, std::abs(r.numeric[i].var_x / analytic[i].var_x - 1.0));
        cmp["max_relative_variance_difference"] = var_err;
        r.summary["comparison"] = cmp;
    }
    r.wall_clock_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace polariton
