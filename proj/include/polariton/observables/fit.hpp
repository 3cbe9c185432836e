#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "polariton/analytic/gaussian.hpp"
#include "polariton/eit/params.hpp"
#include "polariton/errors.hpp"

namespace polariton {

struct DeflectionFit {
    double x0 = 0.0;
    double acceleration = 0.0;  ///< a in x0 + a t^2 / 2
    double exit_time = 0.0;
    double v_x = 0.0;           ///< a * T_exit
    double angle = 0.0;         ///< atan(v_x / speed)
    double residual = 0.0;      ///< RMS of the fit residuals, m
};

namespace detail {

/// Least squares in the columns of A, solved by column-pivoting QR.
inline Eigen::VectorXd least_squares(const Eigen::MatrixXd& A, const Eigen::VectorXd& y,
                                     double* rms = nullptr) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (qr.rank() < A.cols()) throw FitError("least squares: design matrix is rank deficient");
    Eigen::VectorXd c = qr.solve(y);
    if (rms) *rms = std::sqrt((A * c - y).squaredNorm() / static_cast<double>(y.size()));
    return c;
}

inline void check_samples(const std::vector<double>& t, const std::vector<double>& y, std::size_t min) {
    if (t.size() != y.size()) throw FitError("fit: times and values differ in length");
    if (t.size() < min) throw FitError("fit: too few samples");
    double lo = t.front(), hi = t.front();
    for (double v : t) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(hi > lo)) throw FitError("fit: degenerate time samples");
}

}  // namespace detail

/// Fits x(t) = x0 + a t^2 / 2 and reports the exit velocity a T and angle atan(a T / speed),
/// T being the last sample time.
inline DeflectionFit fit_deflection(const std::vector<double>& t, const std::vector<double>& x,
                                    double speed) {
    detail::check_samples(t, x, 3);
    if (!(speed > 0.0)) throw FitError("fit_deflection: speed must be > 0");
    const auto n = static_cast<Eigen::Index>(t.size());
    double T = 0.0;
    for (double v : t) T = std::max(T, v);
    // columns scaled by T so the system stays well conditioned
    Eigen::MatrixXd A(n, 2);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double u = t[static_cast<std::size_t>(i)] / T;
        A(i, 0) = 1.0;
        A(i, 1) = 0.5 * u * u;
        y(i) = x[static_cast<std::size_t>(i)];
    }
    DeflectionFit f;
    const auto c = detail::least_squares(A, y, &f.residual);
    f.x0 = c(0);
    f.acceleration = c(1) / (T * T);
    f.exit_time = T;
    f.v_x = f.acceleration * T;
    f.angle = std::atan(f.v_x / speed);
    return f;
}

inline DeflectionFit fit_deflection(const std::vector<TrajectoryPoint>& series, double speed) {
    std::vector<double> t, x;
    for (const auto& p : series) {
        t.push_back(p.t);
        x.push_back(p.x);
    }
    return fit_deflection(t, x, speed);
}

/// Longitudinal speed taken from the polariton frame.
inline DeflectionFit fit_deflection(const std::vector<TrajectoryPoint>& series,
                                    const PolaritonParams& pol) {
    return fit_deflection(series, pol.v_g);
}

/// Coefficients c_0..c_degree of the least-squares polynomial sum c_j t^j.
inline std::vector<double> polynomial_fit(const std::vector<double>& t, const std::vector<double>& y,
                                          int degree, double* rms = nullptr) {
    if (degree < 0) throw FitError("polynomial_fit: degree must be >= 0");
    detail::check_samples(t, y, static_cast<std::size_t>(degree) + 1);
    double T = 0.0;
    for (double v : t) T = std::max(T, std::abs(v));
    const auto n = static_cast<Eigen::Index>(t.size());
    Eigen::MatrixXd A(n, degree + 1);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double u = t[static_cast<std::size_t>(i)] / T;
        double p = 1.0;
        for (int j = 0; j <= degree; ++j) {
            A(i, j) = p;
            p *= u;
        }
        b(i) = y[static_cast<std::size_t>(i)];
    }
    const auto c = detail::least_squares(A, b, rms);
    std::vector<double> out(static_cast<std::size_t>(degree) + 1);
    double s = 1.0;
    for (int j = 0; j <= degree; ++j) {
        out[static_cast<std::size_t>(j)] = c(j) / s;
        s *= T;
    }
    return out;
}

struct OscillationFit {
    double omega = 0.0;  ///< angular frequency of the fitted sinusoid
    double offset = 0.0;
    double amplitude = 0.0;
    double phase = 0.0;  ///< y = offset + amplitude cos(omega t - phase)
    double residual = 0.0;
};

/// Best sinusoid y = c0 + c1 cos(w t) + c2 sin(w t) with w in [omega_lo, omega_hi]: a coarse scan
/// of the linear-LSQ residual, then golden-section refinement around the best bracket.
inline OscillationFit fit_oscillation(const std::vector<double>& t, const std::vector<double>& y,
                                      double omega_lo, double omega_hi, int scan_points = 400) {
    detail::check_samples(t, y, 4);
    if (!(omega_hi > omega_lo && omega_lo > 0.0)) throw FitError("fit_oscillation: bad frequency window");
    const auto n = static_cast<Eigen::Index>(t.size());
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) b(i) = y[static_cast<std::size_t>(i)];

    auto solve = [&](double w, Eigen::VectorXd* coeff) {
        Eigen::MatrixXd A(n, 3);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double ti = t[static_cast<std::size_t>(i)];
            A(i, 0) = 1.0;
            A(i, 1) = std::cos(w * ti);
            A(i, 2) = std::sin(w * ti);
        }
        double rms = 0.0;
        Eigen::VectorXd c = detail::least_squares(A, b, &rms);
        if (coeff) *coeff = c;
        return rms;
    };

    const double step = (omega_hi - omega_lo) / scan_points;
    double best_w = omega_lo, best_r = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= scan_points; ++j) {
        const double w = omega_lo + j * step;
        const double r = solve(w, nullptr);
        if (r < best_r) {
            best_r = r;
            best_w = w;
        }
    }
    double lo = std::max(omega_lo, best_w - step), hi = std::min(omega_hi, best_w + step);
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = hi - phi * (hi - lo), c = lo + phi * (hi - lo);
    double fa = solve(a, nullptr), fc = solve(c, nullptr);
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        if (fa < fc) {
            hi = c;
            c = a;
            fc = fa;
            a = hi - phi * (hi - lo);
            fa = solve(a, nullptr);
        } else {
            lo = a;
            a = c;
            fa = fc;
            c = lo + phi * (hi - lo);
            fc = solve(c, nullptr);
        }
    }
    OscillationFit f;
    f.omega = 0.5 * (lo + hi);
    Eigen::VectorXd coeff;
    f.residual = solve(f.omega, &coeff);
    f.offset = coeff(0);
    f.amplitude = std::hypot(coeff(1), coeff(2));
    f.phase = std::atan2(coeff(2), coeff(1));
    return f;
}

}  // namespace polariton
