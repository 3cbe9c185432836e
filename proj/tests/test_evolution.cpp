#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <boost/math/tools/minima.hpp>

#include "polariton/analytic/evolution.hpp"
#include "polariton/analytic/wei_norman.hpp"

using namespace polariton;
using cd = std::complex<double>;

namespace {

PolaritonParams pol_at(double theta) {
    return polariton_params_at(theta, constants::bohr_magneton, 2.0 * constants::pi / 795e-9,
                               constants::speed_of_light);
}

}  // namespace

TEST(Harmonic, InitialAndCoherentWidths) {
    const auto pol = pol_at(std::atan(100.0));
    const auto spec = GaussianSpec::from_width(2.5e-3);
    const double w = 40.0;
    const auto p0 = harmonic_observables(0.0, spec, pol, w, 2 * w);
    EXPECT_NEAR(p0.var_x, 0.5 / spec.alpha_x, 1e-20);
    EXPECT_NEAR(p0.var_z, 0.5 / spec.alpha_z, 1e-20);
    // alpha = lambda: width does not breathe
    const double wc = spec.alpha_x / pol.m_eff;
    for (double t : {0.01, 0.2, 3.0})
        EXPECT_NEAR(harmonic_observables(t, spec, pol, wc, wc).var_x / p0.var_x, 1.0, 1e-12);
}

TEST(Harmonic, PeriodAndClosedFormShape) {
    const auto pol = pol_at(std::atan(50.0));
    const auto spec = GaussianSpec::from_width(1e-3, 0.0, 0.0);
    const double wx = 30.0, wy = 55.0;
    const double lambda = pol.m_eff * wx;
    for (double t : {0.0, 0.013, 0.21}) {
        const auto a = harmonic_observables(t, spec, pol, wx, wy);
        const auto b = harmonic_observables(t + constants::pi / wx, spec, pol, wx, wy);
        EXPECT_NEAR(a.var_x / b.var_x, 1.0, 1e-10);
        // [1/4a + a/4l^2] + [1/4a - a/4l^2] cos(2 w t)
        const double A = spec.alpha_x;
        const double ref = (0.25 / A + A / (4 * lambda * lambda)) +
                           (0.25 / A - A / (4 * lambda * lambda)) * std::cos(2 * wx * t);
        EXPECT_NEAR(a.var_x / ref, 1.0, 1e-9);
        EXPECT_EQ(a.x, 0.0);
        EXPECT_NEAR(a.z, pol.v_g * t, 1e-15);
    }
}

TEST(UniformForce, ZeroGradientIsStraight) {
    const auto pol = pol_at(std::atan(80.0));
    const auto r = linear_gradient_observables(0.3, GaussianSpec::from_width(1e-3), pol, 0.0);
    EXPECT_EQ(r.point.x, 0.0);
    EXPECT_EQ(r.deflection_angle, 0.0);
}

TEST(UniformForce, ResolutionIdentity) {
    const double m = 3.0, F = 1.5, b = 0.7;
    const auto spec = GaussianSpec::from_width(b);
    for (double t : {0.1, 0.5, 2.0, 9.0}) {
        const auto r = uniform_force_observables(t, spec, m, F, 1.0);
        EXPECT_NEAR(r.resolution / resolution(t, F, m, b), 1.0, 1e-14);
        EXPECT_NEAR((r.point.x - spec.a_x) / std::sqrt(r.point.var_x), r.resolution, 1e-14);
    }
}

TEST(UniformForce, FreeSpreadingMatchesGaussianAlgebra) {
    const double m = 0.6, b = 1.3;
    const auto spec = GaussianSpec::from_width(b, 0.2);
    for (double t : {0.0, 0.4, 3.0}) {
        auto g = ComplexGaussian1D::normalized(spec.alpha_x, 0.2);
        g.spread(cd(0.0, -t / (2 * m)));
        const auto r = uniform_force_observables(t, spec, m, 0.0, 1.0);
        EXPECT_NEAR(r.point.var_x, g.variance(), 1e-13);
        EXPECT_NEAR(r.point.var_x, (m * m * b * b * b * b + t * t) / (2 * b * b * m * m), 1e-13);
        EXPECT_NEAR(r.point.x, 0.2, 1e-15);
    }
}

TEST(LinearGradient, DeflectionAngleAtExit) {
    const auto pol = pol_at(std::atan(60.0));
    const double B1 = 5e-3, L = 0.1;
    const double zeta = B1 * std::sin(pol.theta) * std::sin(pol.theta);
    const double T = L / pol.v_g;
    const auto r = linear_gradient_observables(T, GaussianSpec::from_width(1e-3), pol, zeta, 1e-4);
    EXPECT_NEAR(r.deflection_angle / deflection_angle(pol, B1, L), 1.0, 1e-12);
    EXPECT_NEAR(r.v_x, pol.mu * zeta * L / (pol.m_eff * pol.v_g), 1e-12 * std::abs(r.v_x));
}

TEST(LinearGradient, SemiclassicalShiftEqualsPolaritonFrame) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> th(0.05, 1.5);
    for (int n = 0; n < 20; ++n) {
        const auto pol = pol_at(th(rng));
        const double B1 = 7e-3, L = 0.1;
        const double T = L / pol.v_g;
        const double force = pol.mu_pol * B1;
        const double polariton_frame = 0.5 * force / pol.m_eff * T * T;
        EXPECT_NEAR(semiclassical_shift(pol, B1, L) / polariton_frame, 1.0, 1e-12);
    }
}

TEST(Quadratic, NoLinearForceStaysPut) {
    PotentialExpansion e;
    e.order = 2;
    e.ax = 1e-4;
    e.ay = -2e-4;
    e.x.c2 = 0.3;
    e.y.c2 = 0.5;
    const auto spec = GaussianSpec::from_width(1e-5, e.ax, e.ay);
    for (double t : {0.0, 1.0, 7.0}) {
        const auto q = quadratic_trajectory(t, e, spec, 2.0, 1.0);
        EXPECT_EQ(q.point.x, e.ax);
        EXPECT_EQ(q.point.y, e.ay);
    }
}

TEST(Quadratic, ReducesToUniformForceAtSmallCurvature) {
    const double m = 2.0, z1 = 0.4, a = 0.1;
    const auto spec = GaussianSpec::from_width(0.5, a);
    for (double t : {0.5, 1.0, 2.0}) {
        const auto u = uniform_force_observables(t, spec, m, -z1, 1.0);
        const double scale = std::abs(u.point.x - a);
        PotentialExpansion e;
        e.order = 2;
        e.ax = a;
        e.x.c1 = z1;
        e.x.c2 = 1e-6;
        const auto q = quadratic_trajectory(t, e, spec, m, 1.0);
        EXPECT_LT(std::abs(q.point.x - u.point.x) / scale, 1e-4);
        EXPECT_LT(std::abs(q.point.var_x - u.point.var_x) / u.point.var_x, 1e-4);
        e.x.c2 = 0.0;
        EXPECT_NEAR(quadratic_trajectory(t, e, spec, m, 1.0).point.x, u.point.x, 1e-14);
        EXPECT_TRUE(quadratic_trajectory(t, e, spec, m, 1.0).unbound_x);
    }
}

TEST(Quadratic, RepulsiveCurvatureIsUnbound) {
    PotentialExpansion e;
    e.order = 2;
    e.x.c1 = 1.0;
    e.x.c2 = -0.5;
    const auto spec = GaussianSpec::from_width(1.0);
    const auto q = quadratic_trajectory(2.0, e, spec, 1.0, 1.0);
    EXPECT_TRUE(q.unbound_x);
    // -z1 (cosh(w t) - 1) / (m w^2) with w = 1
    EXPECT_NEAR(q.point.x, -(std::cosh(2.0) - 1.0), 1e-12);
    PotentialExpansion lin = e;
    lin.order = 1;
    EXPECT_THROW(quadratic_trajectory(1.0, lin, spec, 1.0, 1.0), DomainError);
}

TEST(Quadratic, EqualCurvaturesTraceALine) {
    PotentialExpansion e;
    e.order = 2;
    e.ax = 0.2;
    e.ay = -0.1;
    e.x.c1 = 0.3;
    e.y.c1 = -0.7;
    e.x.c2 = e.y.c2 = 0.9;
    const auto spec = GaussianSpec::from_width(0.01, e.ax, e.ay);
    double max_extent = 0.0;
    for (double t = 0.05; t < 6.0; t += 0.05) {
        const auto q = quadratic_trajectory(t, e, spec, 1.5, 1.0);
        const double dx = q.point.x - e.ax, dy = q.point.y - e.ay;
        EXPECT_NEAR(dx * e.zeta_y1() - dy * e.zeta_x1(), 0.0, 1e-14);
        max_extent = std::max(max_extent, std::hypot(dx, dy));
    }
    // finite segment of length 2 |zeta1| / (m w^2)
    const double w2 = 2 * 0.9 / 1.5;
    EXPECT_LE(max_extent, 2 * std::hypot(0.3, 0.7) / (1.5 * w2) + 1e-12);
}

TEST(DisplacedOscillator, ParametersAndMinimum) {
    const auto zero = displaced_oscillator_params(0.0, 2.0, 1.0);
    EXPECT_EQ(zero.beta, 0.0);
    EXPECT_EQ(zero.equilibrium_shift, 0.0);
    const double z1 = -0.6, z2 = 1.7, m = 0.8;
    const auto d = displaced_oscillator_params(z1, z2, m);
    EXPECT_NEAR(d.omega, std::sqrt(2 * z2 / m), 1e-15);
    EXPECT_NEAR(d.beta, -z1 / (d.omega * std::sqrt(2 * m * d.omega)), 1e-15);
    const auto [xmin, fmin] =
        boost::math::tools::brent_find_minima([&](double u) { return z1 * u + z2 * u * u; }, -10.0, 10.0, 50);
    (void)fmin;
    EXPECT_NEAR(d.equilibrium_shift, xmin, 1e-9);
    EXPECT_THROW(displaced_oscillator_params(1.0, 0.0, 1.0), DomainError);
}

TEST(Dephasing, RealPotentialReducesToMirageShift) {
    const double k = 2 * constants::pi / 600e-9, cc = constants::speed_of_light;
    const auto pol = polariton_params_at(0.0, 1.0, k, cc);
    CouplingParams c;
    c.gsqrtN = 2e8;
    c.Omega0 = 1e7;
    c.k = k;
    const double sigma = 2e-3, Delta = -1e6, a = 7e-4, L = 0.075;
    const auto model = build_potential(GaussianControl{sigma, std::nullopt, TwoPhotonDetuning{Delta}}, pol, c);
    const auto e = expand_induced_potential(model, a, 0.0, 1);
    const double x = dephasing_trajectory(L / cc, e, 1e-4, k, a, cc);
    const double ref = control_beam_shift(a, sigma, c.g2N() / (c.Omega0 * c.Omega0), Delta, L, k, cc);
    EXPECT_NEAR(x / ref, 1.0, 1e-12);
    const auto e0 = expand_induced_potential(model, 0.0, 0.0, 1);
    EXPECT_EQ(dephasing_trajectory(L / cc, e0, 1e-4, k, 0.0, cc), 0.0);
}

// Complex linear potential: the Wei-Norman factors act within complex Gaussians, so the exact
// center follows from Gaussian algebra alone.
TEST(Dephasing, MatchesExactComplexGaussianEvolution) {
    const double k = 3.0, cc = 1.0, b = 0.8, a = 0.4;
    const double m = k / cc;
    const cd c1(-0.7, -0.3);  // eta'_1 = -a1 - i b1
    PotentialExpansion e;
    e.order = 1;
    e.ax = a;
    e.x.c1 = c1;
    for (double T : {0.2, 0.9, 1.6}) {
        const HamiltonianCoefficients h{cd(1.0 / (2 * m)), cd{}, c1, -c1 * a};
        const auto psi = apply_factored(wei_norman_closed_form(T, h), ComplexGaussian1D::normalized(1.0 / (b * b), a));
        EXPECT_NEAR(dephasing_trajectory(T, e, b, k, a, cc), psi.mean(), 1e-12) << T;
    }
}

TEST(Dephasing, CoefficientSigns) {
    const auto d = dephasing_coefficients(0.5, 0.2, 0.1, 2.0, 3.0);
    EXPECT_NEAR(d.c1, -0.01 * 0.2, 1e-16);
    EXPECT_NEAR(d.c2, 0.5 * 3.0 / 4.0, 1e-16);
    EXPECT_NEAR(d.c3, -0.2 * 9.0 / (2 * 0.01 * 4.0), 1e-12);
}

// Exit shift from the first-order expansion of the exact beam, -eta1 T^2 / 2m', over all sign cases.
TEST(Mirage, ExpansionShiftSignTable) {
    const double k = 1e7, cc = constants::speed_of_light;
    const auto pol = polariton_params_at(0.0, 1.0, k, cc);
    CouplingParams c;
    c.gsqrtN = 1e8;
    c.Omega0 = 1e7;
    c.k = k;
    for (double D : {-1e6, 1e6}) {
        for (double a : {-5e-4, 5e-4}) {
            const auto model = build_potential(GaussianControl{2e-3, std::nullopt, TwoPhotonDetuning{D}}, pol, c);
            const auto e = expand_induced_potential(model, a, 0.0, 1);
            const double T = 0.075 / cc;
            const double shift = -e.eta1() * T * T / (2 * pol.m_prime);
            EXPECT_EQ(shift > 0, D * a > 0);
        }
    }
}
