#pragma once

#include <cmath>
#include <complex>

#include "polariton/constants.hpp"
#include "polariton/errors.hpp"

namespace polariton {

using cplx = std::complex<double>;

/// Initial Gaussian packet prod_xi (alpha_xi/pi)^{1/4} exp(-alpha_xi (xi - a_xi)^2 / 2).
struct GaussianSpec {
    double alpha_x = 1.0;  ///< 1/m^2
    double alpha_y = 1.0;
    double alpha_z = 1.0;
    double a_x = 0.0;  ///< m
    double a_y = 0.0;

    /// Isotropic packet of width b (alpha = 1/b^2) centered at (ax, ay).
    static GaussianSpec from_width(double b, double ax = 0.0, double ay = 0.0) {
        if (!(b > 0.0)) throw DomainError("GaussianSpec: width must be > 0");
        const double alpha = 1.0 / (b * b);
        return {alpha, alpha, alpha, ax, ay};
    }

    double width_x() const { return 1.0 / std::sqrt(alpha_x); }
    double width_y() const { return 1.0 / std::sqrt(alpha_y); }

    void validate() const {
        if (!(alpha_x > 0.0 && alpha_y > 0.0 && alpha_z > 0.0))
            throw DomainError("GaussianSpec: alpha must be > 0");
    }
};

/// One sample of a packet trajectory.
struct TrajectoryPoint {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double var_x = 0.0;
    double var_y = 0.0;
    double var_z = 0.0;
    double norm = 1.0;
};

/// psi(x) = exp(-A x^2 + B x + C) with complex A (Re A > 0), B, C.
///
/// Closed under multiplication by exp(linear), complex translation, and free spreading, which
/// is every factor of the linear-potential propagator.
struct ComplexGaussian1D {
    cplx A{0.5, 0.0};
    cplx B{};
    cplx C{};

    /// Normalized (alpha/pi)^{1/4} exp(-alpha (x - a)^2 / 2).
    static ComplexGaussian1D normalized(double alpha, double a = 0.0) {
        ComplexGaussian1D g;
        g.A = 0.5 * alpha;
        g.B = alpha * a;
        g.C = -0.5 * alpha * a * a + 0.25 * std::log(alpha / constants::pi);
        return g;
    }

    cplx operator()(double x) const { return std::exp(-A * x * x + B * x + C); }

    /// Multiply by exp(s x + s0).
    void multiply_exponential(cplx s, cplx s0) {
        B += s;
        C += s0;
    }

    /// psi(x) -> psi(x + shift).
    void translate(cplx shift) {
        C += -A * shift * shift + B * shift;
        B -= 2.0 * A * shift;
    }

    /// Apply exp(g P^2) = exp(-g d^2/dx^2).
    void spread(cplx g) {
        const cplx s = -g;
        const cplx D = 1.0 + 4.0 * A * s;
        const cplx x0 = B / (2.0 * A);
        const cplx A_new = A / D;
        C += B * B / (4.0 * A) - A_new * x0 * x0 - 0.5 * std::log(D);
        B = 2.0 * A_new * x0;
        A = A_new;
    }

    double norm() const {
        const double ra = A.real();
        const double rb = B.real();
        return std::sqrt(constants::pi / (2.0 * ra)) *
               std::exp(2.0 * C.real() + rb * rb / (2.0 * ra));
    }
    double mean() const { return B.real() / (2.0 * A.real()); }
    double variance() const { return 1.0 / (4.0 * A.real()); }
};

}  // namespace polariton
