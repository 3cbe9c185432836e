#pragma once

#include <complex>
#include <variant>

#include "polariton/eit/params.hpp"

namespace polariton {

using cplx = std::complex<double>;

/// Zeeman shift by a uniform field B (tesla): d1, d2 use the atomic moments.
struct MagneticShift {
    double B = 0.0;
};

/// Two-photon detuning Delta (rad/s) in place of the Zeeman shift (mu_s - mu_g) B.
struct TwoPhotonDetuning {
    double Delta = 0.0;
};

using LevelShift = std::variant<MagneticShift, TwoPhotonDetuning>;

/// Decay parameters d1 = i(mu_e - mu_g)B - gamma1, d2 = i(mu_s - mu_g)B - gamma2.
struct DecayParameters {
    cplx d1;
    cplx d2;
};

inline DecayParameters decay_parameters(const LevelShift& shift, const AtomicParams& atomic) {
    constexpr cplx i{0.0, 1.0};
    if (const auto* m = std::get_if<MagneticShift>(&shift)) {
        return {i * (atomic.mu_e - atomic.mu_g) * m->B - atomic.gamma1,
                i * (atomic.mu_s - atomic.mu_g) * m->B - atomic.gamma2};
    }
    const double Delta = std::get<TwoPhotonDetuning>(shift).Delta;
    return {cplx(-atomic.gamma1, 0.0), i * Delta - atomic.gamma2};
}

enum class CoherenceForm { exact, approximate };

/// First-order steady-state coherence sigma_ge for probe amplitude E and single-atom coupling g.
///
/// exact:       i [i(mu_g - mu_s)B + gamma2] g E / (d1 d2 + |Omega|^2)
/// approximate: g (mu B) E / |Omega|^2, valid for |Omega|^2 >> gamma1 gamma2 and small B.
inline cplx steady_state_coherence(cplx E, cplx g, double Omega, const LevelShift& shift,
                                   const AtomicParams& atomic,
                                   CoherenceForm form = CoherenceForm::exact) {
    constexpr cplx i{0.0, 1.0};
    const double omega2 = Omega * Omega;
    const auto [d1, d2] = decay_parameters(shift, atomic);
    // -i d2 == i[i(mu_g - mu_s)B + gamma2]
    const cplx numerator = -i * d2 * g * E;
    if (form == CoherenceForm::approximate) {
        if (omega2 == 0.0) throw SingularityError("steady_state_coherence: Omega = 0");
        return (-i * (d2 + atomic.gamma2)) * g * E / omega2;
    }
    const cplx denominator = d1 * d2 + omega2;
    if (std::abs(denominator) == 0.0)
        throw SingularityError("steady_state_coherence: d1 d2 + |Omega|^2 vanishes");
    return numerator / denominator;
}

}  // namespace polariton
