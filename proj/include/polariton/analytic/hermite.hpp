#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "polariton/constants.hpp"
#include "polariton/errors.hpp"

namespace polariton {

/// Even-state overlaps of a centered Gaussian (alpha) with oscillator eigenstates (lambda = m w).
struct HermiteExpansion {
    double lambda = 0.0;
    double omega = 0.0;
    std::vector<double> coefficients;  ///< coefficients[n] = C_{2n}
    double tail_mass = 0.0;            ///< 1 - sum C_{2n}^2, clamped at 0
};

/// C_{2n} = sqrt((2n)!)/(2^n n!) [4 lambda alpha/(lambda + alpha)^2]^{1/4} r^n,
/// r = (lambda - alpha)/(lambda + alpha), for n = 0..n_max. Odd coefficients vanish.
///
/// Uses the ratio C_{2n}/C_{2n-2} = r sqrt((2n - 1)/(2n)), so no factorials are formed.
inline std::vector<double> gaussian_overlap_coefficients(double alpha, double lambda, int n_max) {
    if (n_max <= 0) throw DomainError("gaussian_overlap_coefficients: n_max must be >= 1");
    if (!(alpha > 0.0) || !(lambda > 0.0))
        throw DomainError("gaussian_overlap_coefficients: alpha and lambda must be > 0");
    std::vector<double> c(static_cast<std::size_t>(n_max) + 1, 0.0);
    const double sum = lambda + alpha;
    c[0] = std::sqrt(std::sqrt(4.0 * lambda * alpha / (sum * sum)));
    if (alpha == lambda) return c;
    const double r = (lambda - alpha) / sum;
    for (int n = 1; n <= n_max; ++n) {
        const double nn = static_cast<double>(n);
        c[static_cast<std::size_t>(n)] =
            c[static_cast<std::size_t>(n - 1)] * r * std::sqrt((2.0 * nn - 1.0) / (2.0 * nn));
    }
    return c;
}

inline HermiteExpansion hermite_expansion(double alpha, double mass, double omega,
                                          int n_max = 64) {
    HermiteExpansion h;
    h.lambda = mass * omega;
    h.omega = omega;
    h.coefficients = gaussian_overlap_coefficients(alpha, h.lambda, n_max);
    double total = 0.0;
    for (double v : h.coefficients) total += v * v;
    h.tail_mass = std::max(0.0, 1.0 - total);
    return h;
}

/// Normalized oscillator eigenfunctions phi_0..phi_{n_max} at x, via the stable recurrence
/// phi_{n+1} = sqrt(2/(n+1)) xi phi_n - sqrt(n/(n+1)) phi_{n-1}, xi = sqrt(lambda) x.
inline std::vector<double> hermite_functions(int n_max, double lambda, double x) {
    std::vector<double> phi(static_cast<std::size_t>(n_max) + 1, 0.0);
    const double xi = std::sqrt(lambda) * x;
    phi[0] = std::sqrt(std::sqrt(lambda / constants::pi)) * std::exp(-0.5 * xi * xi);
    if (n_max >= 1) phi[1] = std::sqrt(2.0) * xi * phi[0];
    for (int n = 1; n < n_max; ++n) {
        const double nn = static_cast<double>(n);
        phi[static_cast<std::size_t>(n + 1)] =
            std::sqrt(2.0 / (nn + 1.0)) * xi * phi[static_cast<std::size_t>(n)] -
            std::sqrt(nn / (nn + 1.0)) * phi[static_cast<std::size_t>(n - 1)];
    }
    return phi;
}

inline double hermite_function(int n, double lambda, double x) {
    return hermite_functions(n, lambda, x)[static_cast<std::size_t>(n)];
}

}  // namespace polariton
