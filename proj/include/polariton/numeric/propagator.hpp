#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "polariton/analytic/gaussian.hpp"
#include "polariton/eit/params.hpp"
#include "polariton/eit/potential.hpp"
#include "polariton/numeric/fft.hpp"
#include "polariton/numeric/state.hpp"
#include "polariton/observables/moments.hpp"

namespace polariton {

/// Which representation of the potential the propagator samples.
enum class PotentialSource { exact, expansion };

struct PropagatorConfig {
    double dt = 0.0;
    std::size_t steps = 0;
    std::size_t sample_every = 1;
    // Unset masses and speed default to the frame of the potential: (m_eff, v_g) or (k/c, c).
    std::optional<double> mass_x;
    std::optional<double> mass_y;
    std::optional<double> speed;
    PotentialSource source = PotentialSource::exact;
    /// Absorbing cosine-ramp mask over the outer 10% of each axis; 0 disables it.
    double mask_strength = 0.0;
    /// Fail with an "edge-mass" guard when the mask zone holds more than `edge_tolerance`, and with
    /// a "spectral-edge" guard when the outer 10% of the k band does.
    bool require_edge_clear = false;
    double edge_tolerance = 1e-6;
    /// dt * spread(V) above this produces a warning.
    double stability_threshold = 0.1;
};

struct PropagationDiagnostics {
    double aliasing_phase = 0.0;   ///< dt k_max^2 / 2m summed over axes, must stay < pi
    double potential_phase = 0.0;  ///< dt max|V - V(center)|
    double max_edge_mass = 0.0;    ///< largest fraction of the norm found in the mask zone
    double max_spectral_edge_mass = 0.0;  ///< same for the outer 10% of the k band
    double initial_norm = 0.0;
    double final_norm = 0.0;
    bool norm_non_increasing = true;
    std::size_t steps_taken = 0;
    std::vector<std::string> warnings;
};

struct PropagationResult {
    std::vector<TrajectoryPoint> series;
    WavepacketState final_state;
    PropagationDiagnostics diagnostics;
};

/// Everything the split-step loop needs: the sampled potential and kinetic parameters.
struct SplitStepSystem {
    std::vector<std::complex<double>> potential;  ///< rad/s, grid layout
    double mass_x = 1.0;
    double mass_y = 1.0;
    double speed = 0.0;  ///< longitudinal speed of the comoving frame
};

/// Samples V on the grid; `expansion` requires the model to carry one.
inline std::vector<std::complex<double>> sample_potential(const PotentialModel& model,
                                                          const TransverseGrid& grid,
                                                          PotentialSource source) {
    if (model.two_dimensional() && !grid.two_dimensional())
        throw ConfigError("sample_potential: potential depends on y but the grid is 1-D");
    if (source == PotentialSource::expansion && !model.expansion())
        throw ConfigError("sample_potential: potential has no expansion attached");
    std::vector<std::complex<double>> v(grid.size());
    for (std::size_t iy = 0; iy < grid.ny(); ++iy) {
        for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
            const double x = grid.x(ix);
            const double y = grid.y(iy);
            v[iy * grid.nx() + ix] =
                source == PotentialSource::exact ? model(x, y) : (*model.expansion())(x, y);
        }
    }
    return v;
}

namespace detail {

/// 1 in the interior, 1 - strength sin^2(pi s / 2) at depth s in [0, 1] into the outer 10%.
inline double mask_factor(double u, double strength) {
    // u in [0, 1) is the position along the axis
    const double edge = 0.1;
    const double d = std::min(u, 1.0 - u);
    if (d >= edge) return 1.0;
    const double s = (edge - d) / edge;
    const double r = std::sin(0.5 * constants::pi * s);
    return 1.0 - strength * r * r;
}

inline bool in_edge_zone(std::size_t i, std::size_t n) {
    const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    return std::min(u, 1.0 - u) < 0.1;
}

inline double edge_mass_fraction(const WavepacketState& s) {
    const auto& g = s.grid;
    double total = 0.0, edge = 0.0;
    for (std::size_t iy = 0; iy < g.ny(); ++iy) {
        const bool ey = g.two_dimensional() && in_edge_zone(iy, g.ny());
        for (std::size_t ix = 0; ix < g.nx(); ++ix) {
            const double w = std::norm(s.at(ix, iy));
            total += w;
            if (ey || in_edge_zone(ix, g.nx())) edge += w;
        }
    }
    return total > 0.0 ? edge / total : 0.0;
}

/// Fraction of |psi_k|^2 with |k| in the outer 10% of the band; `d` is in fftfreq order.
inline double spectral_edge_fraction(const std::complex<double>* d, const TransverseGrid& g) {
    double total = 0.0, edge = 0.0;
    for (std::size_t iy = 0; iy < g.ny(); ++iy) {
        const bool ey = g.two_dimensional() && in_edge_zone((iy + g.ny() / 2) % g.ny(), g.ny());
        for (std::size_t ix = 0; ix < g.nx(); ++ix) {
            const double w = std::norm(d[iy * g.nx() + ix]);
            total += w;
            if (ey || in_edge_zone((ix + g.nx() / 2) % g.nx(), g.nx())) edge += w;
        }
    }
    return total > 0.0 ? edge / total : 0.0;
}

inline TrajectoryPoint sample_point(const WavepacketState& s, double mass_y) {
    const auto m = moments(s);
    TrajectoryPoint p;
    p.t = s.time;
    p.x = m.mean_x;
    p.z = s.z_center;
    p.var_x = m.var_x;
    p.var_z = s.var_z;
    p.norm = m.norm;
    if (s.grid.two_dimensional()) {
        p.y = m.mean_y;
        p.var_y = m.var_y;
    } else {
        p.y = s.mean_y0;
        p.var_y = s.var_y0 + s.time * s.time / (4.0 * mass_y * mass_y * s.var_y0);
    }
    return p;
}

}  // namespace detail

/// Strang split-step evolution of i dpsi/dt = [P^2/2m + V] psi in the comoving frame:
/// half kinetic step exp(-i k^2 dt / 4m), full potential step exp(-i V dt), half kinetic step.
/// Adjacent half steps between samples are fused. z advances analytically by speed * dt.
inline PropagationResult split_step_propagate(WavepacketState state, const SplitStepSystem& sys,
                                              const PropagatorConfig& config) {
    const auto& g = state.grid;
    if (sys.potential.size() != g.size())
        throw ConfigError("split_step_propagate: potential does not match the grid");
    if (!(config.dt > 0.0)) throw ConfigError("split_step_propagate: dt must be > 0");
    if (config.sample_every == 0) throw ConfigError("split_step_propagate: sample_every must be >= 1");
    if (!(sys.mass_x > 0.0) || !(sys.mass_y > 0.0))
        throw ConfigError("split_step_propagate: masses must be > 0");
    if (config.mask_strength < 0.0 || config.mask_strength > 1.0)
        throw ConfigError("split_step_propagate: mask strength must lie in [0, 1]");

    PropagationResult result{{}, state, {}};
    auto& diag = result.diagnostics;
    const double dt = config.dt;

    diag.aliasing_phase = dt * g.kx_max() * g.kx_max() / (2.0 * sys.mass_x);
    if (g.two_dimensional()) diag.aliasing_phase += dt * g.ky_max() * g.ky_max() / (2.0 * sys.mass_y);
    if (!(diag.aliasing_phase < constants::pi)) {
        std::ostringstream msg;
        msg << "dt k_max^2 / 2m = " << diag.aliasing_phase << " is not below pi";
        throw GuardFailure("aliasing", msg.str());
    }

    // Potential spread relative to the packet center; a constant offset is only a global phase.
    const auto m0 = moments(state);
    const std::size_t cx = static_cast<std::size_t>(std::clamp(
        std::lround((m0.mean_x + g.extent_x()) / g.dx()), 0L, static_cast<long>(g.nx()) - 1));
    const std::size_t cy = g.two_dimensional()
                               ? static_cast<std::size_t>(std::clamp(
                                     std::lround((m0.mean_y + g.extent_y()) / g.dy()), 0L,
                                     static_cast<long>(g.ny()) - 1))
                               : 0;
    const auto v_ref = sys.potential[cy * g.nx() + cx];
    double spread = 0.0;
    bool absorbing = true;
    for (const auto& v : sys.potential) {
        spread = std::max(spread, std::abs(v - v_ref));
        if (v.imag() > 0.0) absorbing = false;
    }
    diag.potential_phase = dt * spread;
    if (diag.potential_phase > config.stability_threshold) {
        std::ostringstream msg;
        msg << "potential guard: dt max|V - V(center)| = " << diag.potential_phase << " exceeds "
            << config.stability_threshold;
        diag.warnings.push_back(msg.str());
    }
    if (!absorbing) diag.warnings.push_back("potential has Im V > 0 somewhere; norm may grow");

    std::vector<std::complex<double>> half(g.size()), full(g.size()), vstep(g.size());
    for (std::size_t iy = 0; iy < g.ny(); ++iy) {
        const double ky = g.ky()[iy];
        for (std::size_t ix = 0; ix < g.nx(); ++ix) {
            const double kx = g.kx()[ix];
            const double e = kx * kx / (2.0 * sys.mass_x) + ky * ky / (2.0 * sys.mass_y);
            half[iy * g.nx() + ix] = std::polar(1.0, -0.5 * e * dt);
            full[iy * g.nx() + ix] = std::polar(1.0, -e * dt);
        }
    }
    for (std::size_t i = 0; i < g.size(); ++i) vstep[i] = std::exp(std::complex<double>(0.0, -dt) * sys.potential[i]);

    std::vector<double> mask;
    if (config.mask_strength > 0.0) {
        mask.resize(g.size());
        for (std::size_t iy = 0; iy < g.ny(); ++iy) {
            const double my = g.two_dimensional()
                                  ? detail::mask_factor(static_cast<double>(iy) / g.ny(), config.mask_strength)
                                  : 1.0;
            for (std::size_t ix = 0; ix < g.nx(); ++ix)
                mask[iy * g.nx() + ix] =
                    my * detail::mask_factor(static_cast<double>(ix) / g.nx(), config.mask_strength);
        }
    }

    auto check_edges = [&](const WavepacketState& s) {
        const double f = detail::edge_mass_fraction(s);
        diag.max_edge_mass = std::max(diag.max_edge_mass, f);
        if (config.require_edge_clear && f > config.edge_tolerance) {
            std::ostringstream msg;
            msg << "mass fraction " << f << " in the boundary zone at t = " << s.time
                << " exceeds " << config.edge_tolerance;
            throw GuardFailure("edge-mass", msg.str());
        }
    };

    auto check_spectrum = [&](const std::complex<double>* k, double time) {
        const double f = detail::spectral_edge_fraction(k, g);
        diag.max_spectral_edge_mass = std::max(diag.max_spectral_edge_mass, f);
        if (config.require_edge_clear && f > config.edge_tolerance) {
            std::ostringstream msg;
            msg << "mass fraction " << f << " near k_max at t = " << time << " exceeds "
                << config.edge_tolerance << " (momentum aliasing; refine the grid)";
            throw GuardFailure("spectral-edge", msg.str());
        }
    };

    auto emit = [&](WavepacketState& s) {
        auto p = detail::sample_point(s, sys.mass_y);
        s.norm = p.norm;
        if (!result.series.empty() && p.norm > result.series.back().norm) diag.norm_non_increasing = false;
        result.series.push_back(p);
        check_edges(s);
    };

    const double t0 = state.time;
    const double z0 = state.z_center;
    diag.initial_norm = discrete_norm(state);
    emit(state);

    GridFft fft(g);
    auto* d = fft.data();
    const std::size_t n = g.size();
    fft.load(state.psi);
    if (config.steps > 0) {
        fft.forward();
        check_spectrum(d, t0);
        for (std::size_t i = 0; i < n; ++i) d[i] *= half[i];
        fft.inverse();
    }
    for (std::size_t step = 1; step <= config.steps; ++step) {
        bool finite = true;
        for (std::size_t i = 0; i < n; ++i) {
            d[i] *= vstep[i];
            if (!mask.empty()) d[i] *= mask[i];
            finite = finite && std::isfinite(d[i].real()) && std::isfinite(d[i].imag());
        }
        if (!finite) throw NumericalFailure("split_step_propagate: non-finite amplitude", step);
        fft.forward();
        const bool sample = step % config.sample_every == 0 || step == config.steps;
        if (sample) {
            check_spectrum(d, t0 + static_cast<double>(step) * dt);
            for (std::size_t i = 0; i < n; ++i) d[i] *= half[i];
            fft.inverse();
            fft.store(state.psi);
            state.time = t0 + static_cast<double>(step) * dt;
            state.z_center = z0 + sys.speed * (state.time - t0);
            emit(state);
            if (step < config.steps) {
                fft.forward();
                for (std::size_t i = 0; i < n; ++i) d[i] *= half[i];
                fft.inverse();
            }
        } else {
            for (std::size_t i = 0; i < n; ++i) d[i] *= full[i];
            fft.inverse();
        }
        diag.steps_taken = step;
    }
    diag.final_norm = discrete_norm(state);
    result.final_state = std::move(state);
    return result;
}

/// Propagates under a potential model; masses, speed, and the potential representation come from
/// the model frame and `config`.
inline PropagationResult split_step_propagate(const WavepacketState& state,
                                              const PotentialModel& potential,
                                              const PolaritonParams& pol,
                                              const PropagatorConfig& config) {
    const bool light = potential.frame() == Frame::light;
    const double m_default = light ? pol.m_prime : pol.m_eff;
    SplitStepSystem sys;
    sys.potential = sample_potential(potential, state.grid, config.source);
    sys.mass_x = config.mass_x.value_or(m_default);
    sys.mass_y = config.mass_y.value_or(m_default);
    sys.speed = config.speed.value_or(light ? pol.c : pol.v_g);
    return split_step_propagate(state, sys, config);
}

}  // namespace polariton
