#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "polariton/analytic/gaussian.hpp"
#include "polariton/errors.hpp"

namespace polariton {

/// H = p2 P^2 + p1 P + x_coeff x + one, coefficients in rad/s (times the basis units).
struct HamiltonianCoefficients {
    cplx p2{};
    cplx p1{};
    cplx x{};
    cplx one{};
};

/// exp(-i H t) = exp(g1 P^2) exp(g2 P) exp(g3 x) exp(g4).
struct WeiNormanSolution {
    double t = 0.0;
    cplx g1{};
    cplx g2{};
    cplx g3{};
    cplx g4{};
};

/// Right-hand side of the factorization ODEs, obtained from i dU/dt U^-1 = H:
///   i g1' = p2,  i g3' = x,  i (g2' - 2 i g1 g3') = p1,  i (g4' - i g2 g3') = one.
inline std::array<cplx, 4> wei_norman_rhs(const HamiltonianCoefficients& h, cplx g1, cplx g2) {
    constexpr cplx i{0.0, 1.0};
    const cplx d1 = -i * h.p2;
    const cplx d3 = -i * h.x;
    const cplx d2 = -i * h.p1 + 2.0 * i * g1 * d3;
    const cplx d4 = -i * h.one + i * g2 * d3;
    return {d1, d2, d3, d4};
}

/// Closed form for constant coefficients.
inline WeiNormanSolution wei_norman_closed_form(double t, const HamiltonianCoefficients& h) {
    constexpr cplx i{0.0, 1.0};
    WeiNormanSolution s;
    s.t = t;
    s.g1 = -i * h.p2 * t;
    s.g3 = -i * h.x * t;
    s.g2 = -i * h.p1 * t - i * h.p2 * h.x * t * t;
    s.g4 = -i * h.one * t - i * h.p1 * h.x * t * t / 2.0 - i * h.p2 * h.x * h.x * t * t * t / 3.0;
    return s;
}

/// Coefficients of H = P^2/(2m) - F x - F0 (uniform force F = mu zeta, offset F0 = mu b0).
inline HamiltonianCoefficients linear_potential_coefficients(double mass, double force,
                                                             double offset) {
    return {cplx(1.0 / (2.0 * mass)), cplx{}, cplx(-force), cplx(-offset)};
}

/// g1 = -i t/2m, g3 = i t F, g2 = i F t^2/2m, g4 = i (F0 t - t^3 F^2 / 6m).
inline WeiNormanSolution wei_norman_closed_form(double t, double mass, double force,
                                                double offset) {
    if (!(mass > 0.0)) throw DomainError("wei_norman_closed_form: mass must be > 0");
    return wei_norman_closed_form(t, linear_potential_coefficients(mass, force, offset));
}

struct OdeTolerance {
    double abs = 1e-14;
    double rel = 1e-12;
    std::size_t max_steps = 1000000;
};

/// Integrates the factorization ODEs for time-dependent coefficients on [0, t].
inline WeiNormanSolution wei_norman_ode_solve(
    const std::function<HamiltonianCoefficients(double)>& coefficients, double t,
    OdeTolerance tol = {}) {
    namespace odeint = boost::numeric::odeint;
    using State = std::array<double, 8>;
    State y{};
    if (t == 0.0) return {};

    auto rhs = [&](const State& s, State& dsdt, double time) {
        const cplx g1(s[0], s[1]);
        const cplx g2(s[2], s[3]);
        const auto d = wei_norman_rhs(coefficients(time), g1, g2);
        for (std::size_t j = 0; j < 4; ++j) {
            dsdt[2 * j] = d[j].real();
            dsdt[2 * j + 1] = d[j].imag();
        }
    };

    auto stepper = odeint::make_controlled(tol.abs, tol.rel, odeint::runge_kutta_dopri5<State>{});
    double time = 0.0;
    double dt = t / 64.0;
    std::size_t attempts = 0;
    while (t - time > 1e-15 * std::abs(t)) {
        if (time + dt > t) dt = t - time;
        stepper.try_step(rhs, y, time, dt);
        if (++attempts > tol.max_steps || !(std::abs(dt) > 1e-300)) {
            std::ostringstream msg;
            msg << "wei_norman_ode_solve: step-size failure at t=" << time << " dt=" << dt
                << " after " << attempts << " attempts";
            throw IntegrationError(msg.str(), attempts);
        }
    }
    for (double v : y) {
        if (!std::isfinite(v)) throw IntegrationError("wei_norman_ode_solve: non-finite state", attempts);
    }
    return {t, {y[0], y[1]}, {y[2], y[3]}, {y[4], y[5]}, {y[6], y[7]}};
}

/// Applies the factored propagator to a complex Gaussian: exp(g4) exp(g3 x), then exp(g2 P)
/// (translation by -i g2), then exp(g1 P^2).
inline ComplexGaussian1D apply_factored(const WeiNormanSolution& s, ComplexGaussian1D psi) {
    constexpr cplx i{0.0, 1.0};
    psi.multiply_exponential(s.g3, s.g4);
    psi.translate(-i * s.g2);
    psi.spread(s.g1);
    return psi;
}

}  // namespace polariton
