#pragma once

#include <cmath>

#include "polariton/analytic/gaussian.hpp"
#include "polariton/analytic/hermite.hpp"
#include "polariton/eit/params.hpp"
#include "polariton/eit/potential.hpp"

namespace polariton {

// ---------------------------------------------------------------------------------------------
// Harmonic magnetic trap

/// Width of a real Gaussian (alpha) released at t = 0 into an oscillator with lambda = m w:
///   var(t) = cos^2(w t) / (2 alpha) + alpha sin^2(w t) / (2 lambda^2).
inline double oscillator_variance(double t, double alpha, double lambda, double omega) {
    const double c = std::cos(omega * t);
    const double s = std::sin(omega * t);
    return c * c / (2.0 * alpha) + alpha * s * s / (2.0 * lambda * lambda);
}

inline TrajectoryPoint harmonic_observables(double t, const GaussianSpec& spec,
                                            const PolaritonParams& pol, double omega_x,
                                            double omega_y) {
    spec.validate();
    TrajectoryPoint p;
    p.t = t;
    p.x = 0.0;
    p.y = 0.0;
    p.z = pol.v_g * t;
    p.var_x = oscillator_variance(t, spec.alpha_x, pol.m_eff * omega_x, omega_x);
    p.var_y = oscillator_variance(t, spec.alpha_y, pol.m_eff * omega_y, omega_y);
    p.var_z = 1.0 / (2.0 * spec.alpha_z);
    p.norm = 1.0;
    return p;
}

/// Harmonic-trap wavefunction along one axis from its even Hermite expansion, global phase
/// exp(-i w t / 2) dropped.
inline cplx harmonic_wavefunction(double t, const HermiteExpansion& h, double x) {
    const int n_max = static_cast<int>(h.coefficients.size()) - 1;
    const auto phi = hermite_functions(2 * n_max, h.lambda, x);
    cplx sum{};
    for (int n = 0; n <= n_max; ++n) {
        const double phase = -2.0 * n * h.omega * t;
        sum += h.coefficients[static_cast<std::size_t>(n)] * phi[static_cast<std::size_t>(2 * n)] *
               cplx(std::cos(phase), std::sin(phase));
    }
    return sum;
}

// ---------------------------------------------------------------------------------------------
// Uniform force (linear gradient and first-order control-beam expansion)

struct UniformForceResult {
    TrajectoryPoint point;
    double v_x = 0.0;              ///< transverse velocity F t / m
    double deflection_angle = 0.0; ///< v_x / longitudinal speed
    double resolution = 0.0;       ///< <x - x0> / Delta x
};

/// Gaussian of width b = 1/sqrt(alpha_x) under H = speed P_z + P_x^2/2m - F x:
///   <x> = x0 + F t^2 / 2m,  var_x = (m^2 b^4 + t^2) / (2 b^2 m^2),  var_z = b_z^2 / 2.
inline UniformForceResult uniform_force_observables(double t, const GaussianSpec& spec,
                                                    double mass, double force, double speed) {
    spec.validate();
    if (!(mass > 0.0)) throw DomainError("uniform_force_observables: mass must be > 0");
    const double b2 = 1.0 / spec.alpha_x;
    UniformForceResult r;
    r.point.t = t;
    const double shift = force * t * t / (2.0 * mass);
    r.point.x = spec.a_x + shift;
    r.point.y = spec.a_y;
    r.point.z = speed * t;
    r.point.var_x = (mass * mass * b2 * b2 + t * t) / (2.0 * b2 * mass * mass);
    r.point.var_y = 1.0 / (2.0 * spec.alpha_y);
    r.point.var_z = 1.0 / (2.0 * spec.alpha_z);
    r.point.norm = 1.0;
    r.v_x = force * t / mass;
    r.deflection_angle = r.v_x / speed;
    r.resolution = shift / std::sqrt(r.point.var_x);
    return r;
}

/// Linear magnetic gradient, zeta = B1 sin^2(theta): force mu zeta in the polariton frame.
/// The offset b0 only enters the global phase, so no exported observable depends on it.
inline UniformForceResult linear_gradient_observables(double t, const GaussianSpec& spec,
                                                      const PolaritonParams& pol, double zeta,
                                                      [[maybe_unused]] double b0 = 0.0) {
    return uniform_force_observables(t, spec, pol.m_eff, pol.mu * zeta, pol.v_g);
}

/// R(t) = t^2 mu zeta sqrt(b^2 / (2 m^2 b^4 + 2 t^2)).
inline double resolution(double t, double force, double mass, double b) {
    const double b2 = b * b;
    return t * t * force * std::sqrt(b2 / (2.0 * mass * mass * b2 * b2 + 2.0 * t * t));
}

/// Deflection angle (L / v_g)(mu / k) B1 sin^2(theta) after a cell of length L.
inline double deflection_angle(const PolaritonParams& pol, double B1, double length) {
    const double s = std::sin(pol.theta);
    return (length / pol.v_g) * (pol.mu / pol.k) * B1 * s * s;
}

/// Exit shift mu B1 L^2 tan^2(theta) / (2 k c) of the light-frame (semiclassical) description.
inline double semiclassical_shift(const PolaritonParams& pol, double B1, double length) {
    const double tn = std::tan(pol.theta);
    return pol.mu * B1 * length * length * tn * tn / (2.0 * pol.k * pol.c);
}

/// Exit shift a + L^2 Delta a e^{a^2/s^2} |g|^2 N / (Omega0^2 s^2 k c) under the first-order
/// control-beam expansion.
inline double control_beam_shift(double a, double sigma, double g2N_over_omega02,
                                 double detuning, double length, double k, double c) {
    return a + length * length * detuning * a * std::exp(a * a / (sigma * sigma)) *
                   g2N_over_omega02 / (sigma * sigma * k * c);
}

// ---------------------------------------------------------------------------------------------
// Quadratic expansion: displaced oscillator

struct DisplacedOscillator {
    double omega = 0.0;
    double beta = 0.0;
    double equilibrium_shift = 0.0;
};

/// H = P^2/2m' + z1 (x - a) + z2 (x - a)^2 is an oscillator of frequency sqrt(2 z2/m') centered
/// at a - z1/(m' w^2), reached from the one centered at a by the displacement beta.
inline DisplacedOscillator displaced_oscillator_params(double zeta1, double zeta2,
                                                       double m_prime) {
    if (!(zeta2 > 0.0)) throw DomainError("displaced_oscillator_params: zeta2 must be > 0");
    if (!(m_prime > 0.0)) throw DomainError("displaced_oscillator_params: mass must be > 0");
    DisplacedOscillator d;
    d.omega = std::sqrt(2.0 * zeta2 / m_prime);
    d.beta = -zeta1 / (d.omega * std::sqrt(2.0 * m_prime * d.omega));
    d.equilibrium_shift = -zeta1 / (m_prime * d.omega * d.omega);
    return d;
}

struct AxisMotion {
    double center = 0.0;
    double variance = 0.0;
    double omega = 0.0;  ///< sqrt(|2 zeta2 / m'|)
    bool unbound = false;
};

/// (1 - cos(w t))/(w^2) and its continuation through w^2 = 0 to (cosh - 1)/|w|^2; `w2` is the
/// signed square frequency 2 zeta2 / m'.
inline double oscillator_kernel(double w2, double t) {
    const double u2 = w2 * t * t;
    if (std::abs(u2) < 1e-4) {
        // 1/2 - u^2/24 + u^4/720
        return t * t * (0.5 - u2 / 24.0 + u2 * u2 / 720.0);
    }
    if (w2 > 0.0) {
        const double s = std::sin(0.5 * std::sqrt(w2) * t);
        return 2.0 * s * s / w2;
    }
    const double s = std::sinh(0.5 * std::sqrt(-w2) * t);
    return -2.0 * s * s / w2;
}

/// Center and width along one axis for V = z1 (chi - a) + z2 (chi - a)^2, packet width 1/sqrt(alpha).
inline AxisMotion quadratic_axis_motion(double t, double a, double alpha, double zeta1,
                                        double zeta2, double m_prime) {
    AxisMotion m;
    const double w2 = 2.0 * zeta2 / m_prime;
    m.omega = std::sqrt(std::abs(w2));
    m.unbound = !(zeta2 > 0.0);
    m.center = a - zeta1 * oscillator_kernel(w2, t) / m_prime;
    // var = var0 cos^2 + varp sin^2 / (m w)^2, continued analytically for w2 <= 0
    const double var0 = 1.0 / (2.0 * alpha);
    const double varp = alpha / 2.0;
    double c, s_over_w;
    if (w2 > 0.0) {
        c = std::cos(m.omega * t);
        s_over_w = std::sin(m.omega * t) / m.omega;
    } else if (w2 < 0.0) {
        c = std::cosh(m.omega * t);
        s_over_w = std::sinh(m.omega * t) / m.omega;
    } else {
        c = 1.0;
        s_over_w = t;
    }
    m.variance = var0 * c * c + varp * s_over_w * s_over_w / (m_prime * m_prime);
    return m;
}

struct QuadraticTrajectoryPoint {
    TrajectoryPoint point;
    double omega_x = 0.0;
    double omega_y = 0.0;
    bool unbound_x = false;
    bool unbound_y = false;
};

/// x_c = a_x - zeta_x1 (1 - cos w_x t) / (m' w_x^2), same for y, z_c = speed t.
inline QuadraticTrajectoryPoint quadratic_trajectory(double t, const PotentialExpansion& e,
                                                     const GaussianSpec& spec, double m_prime,
                                                     double speed) {
    if (e.order != 2) throw DomainError("quadratic_trajectory: expansion must be second order");
    const auto mx = quadratic_axis_motion(t, e.ax, spec.alpha_x, e.zeta_x1(), e.zeta_x2(), m_prime);
    const auto my = quadratic_axis_motion(t, e.ay, spec.alpha_y, e.zeta_y1(), e.zeta_y2(), m_prime);
    QuadraticTrajectoryPoint q;
    q.point.t = t;
    q.point.x = mx.center;
    q.point.y = my.center;
    q.point.z = speed * t;
    q.point.var_x = mx.variance;
    q.point.var_y = my.variance;
    q.point.var_z = 1.0 / (2.0 * spec.alpha_z);
    q.omega_x = mx.omega;
    q.omega_y = my.omega;
    q.unbound_x = mx.unbound;
    q.unbound_y = my.unbound;
    return q;
}

// ---------------------------------------------------------------------------------------------
// Dephasing: complex linear potential eta'_1 (x - a), eta'_1 = -a1 - i b1

/// Polynomial coefficients of the exit position x(T) = a + c1 T + c2 T^2 + c3 T^3.
struct DephasingCoefficients {
    double c1 = 0.0;  ///< -b^2 b1
    double c2 = 0.0;  ///< a1 c / 2k
    double c3 = 0.0;  ///< -b1 c^2 / (2 b^2 k^2)
};

inline DephasingCoefficients dephasing_coefficients(double a1, double b1, double b, double k,
                                                    double c) {
    DephasingCoefficients d;
    d.c1 = -b * b * b1;
    d.c2 = a1 * c / (2.0 * k);
    d.c3 = -b1 * c * c / (2.0 * b * b * k * k);
    return d;
}

/// Center of a packet of width b started at a after time T in the light frame (m' = k/c).
inline double dephasing_trajectory(double T, const PotentialExpansion& e, double b, double k,
                                   double a, double c) {
    const auto d = dephasing_coefficients(e.a1(), e.b1(), b, k, c);
    return a + d.c1 * T + d.c2 * T * T + d.c3 * T * T * T;
}

}  // namespace polariton
