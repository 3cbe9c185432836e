#pragma once

#include <cmath>
#include <optional>

#include "polariton/constants.hpp"
#include "polariton/errors.hpp"

namespace polariton {

/// Zeeman quantum numbers of the two ground states; mu_i = mF_i gF_i mu_B.
struct QuantumNumbers {
    double mF_g = 0.0;
    double gF_g = 0.0;
    double mF_s = 0.0;
    double gF_s = 0.0;
};

/// Lambda-atom parameters. Magnetic moments in rad/s per tesla, rates in rad/s.
///
/// mu_e and gamma3 are carried for completeness; no implemented formula uses them.
struct AtomicParams {
    double mu_g = 0.0;
    double mu_s = 0.0;
    double mu_e = 0.0;
    double gamma1 = 1.0;
    double gamma2 = 0.0;
    double gamma3 = 0.0;
    std::optional<QuantumNumbers> quantum;

    static AtomicParams from_quantum_numbers(const QuantumNumbers& q, double gamma1,
                                             double gamma2 = 0.0, double gamma3 = 0.0,
                                             double mu_e = 0.0) {
        AtomicParams p;
        p.mu_g = q.mF_g * q.gF_g * constants::bohr_magneton;
        p.mu_s = q.mF_s * q.gF_s * constants::bohr_magneton;
        p.mu_e = mu_e;
        p.gamma1 = gamma1;
        p.gamma2 = gamma2;
        p.gamma3 = gamma3;
        p.quantum = q;
        p.validate();
        return p;
    }

    /// mu = mu_s - mu_g, the moment that enters every induced potential.
    double mu() const { return mu_s - mu_g; }

    void validate() const {
        if (!(gamma1 > 0.0)) throw DomainError("AtomicParams: gamma1 must be > 0");
        if (!(gamma2 >= 0.0)) throw DomainError("AtomicParams: gamma2 must be >= 0");
        if (!(gamma3 >= 0.0)) throw DomainError("AtomicParams: gamma3 must be >= 0");
        if (quantum) {
            const double g = quantum->mF_g * quantum->gF_g * constants::bohr_magneton;
            const double s = quantum->mF_s * quantum->gF_s * constants::bohr_magneton;
            if (g != mu_g || s != mu_s)
                throw DomainError("AtomicParams: magnetic moments disagree with quantum numbers");
        }
    }
};

/// Light-matter coupling. gsqrtN is the collective coupling g*sqrt(N) in rad/s.
struct CouplingParams {
    double gsqrtN = 0.0;
    double Omega0 = 1.0;
    double nu = 0.0;
    double k = 1.0;
    double c = constants::speed_of_light;

    /// |g|^2 N in rad^2/s^2.
    double g2N() const { return gsqrtN * gsqrtN; }

    void validate() const {
        if (!(Omega0 > 0.0)) throw DomainError("CouplingParams: Omega0 must be > 0");
        if (!(k > 0.0)) throw DomainError("CouplingParams: k must be > 0");
        if (!(gsqrtN >= 0.0)) throw DomainError("CouplingParams: gsqrtN must be >= 0");
        if (!(c > 0.0)) throw DomainError("CouplingParams: c must be > 0");
    }
};

/// Derived dark-state polariton quantities.
struct PolaritonParams {
    double theta = 0.0;    ///< mixing angle, rad
    double v_g = 0.0;      ///< group velocity, m/s
    double m_eff = 0.0;    ///< transverse mass in the polariton frame, k / v_g
    double m_prime = 0.0;  ///< transverse mass in the light frame, k / c
    double mu_pol = 0.0;   ///< effective magnetic moment, mu sin^2(theta)
    double mu = 0.0;       ///< mu_s - mu_g
    double k = 0.0;
    double c = constants::speed_of_light;
};

/// tan(theta) = g sqrt(N) / Omega.
inline double mixing_angle(double gsqrtN, double Omega) {
    if (!(Omega > 0.0)) throw DomainError("mixing_angle: Omega must be > 0");
    if (!(gsqrtN >= 0.0)) throw DomainError("mixing_angle: gsqrtN must be >= 0");
    return std::atan2(gsqrtN, Omega);
}

/// Polariton parameters at mixing angle theta. Split out so property tests can sweep theta.
inline PolaritonParams polariton_params_at(double theta, double mu, double k, double c) {
    if (!(theta >= 0.0 && theta <= constants::pi / 2))
        throw DomainError("polariton_params_at: theta outside [0, pi/2]");
    const double cos_t = std::cos(theta);
    const double sin_t = std::sin(theta);
    PolaritonParams p;
    p.theta = theta;
    p.v_g = c * cos_t * cos_t;
    p.m_eff = k / p.v_g;
    p.m_prime = k / c;
    p.mu_pol = mu * sin_t * sin_t;
    p.mu = mu;
    p.k = k;
    p.c = c;
    return p;
}

inline PolaritonParams derive_polariton_params(const AtomicParams& atomic,
                                               const CouplingParams& coupling) {
    atomic.validate();
    coupling.validate();
    const double theta = mixing_angle(coupling.gsqrtN, coupling.Omega0);
    return polariton_params_at(theta, atomic.mu(), coupling.k, coupling.c);
}

}  // namespace polariton
