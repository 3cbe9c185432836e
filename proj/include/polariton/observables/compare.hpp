#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "polariton/errors.hpp"
#include "polariton/numeric/state.hpp"

namespace polariton {

/// sqrt(sum |a - e^{i phi} b|^2 * cell) with phi = arg <b, a>, the phase minimizing it.
inline double l2_error(const std::vector<std::complex<double>>& a,
                       const std::vector<std::complex<double>>& b, double cell = 1.0) {
    if (a.size() != b.size()) throw DomainError("l2_error: size mismatch");
    std::complex<double> overlap{};
    for (std::size_t i = 0; i < a.size(); ++i) overlap += std::conj(b[i]) * a[i];
    const std::complex<double> phase =
        std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : std::complex<double>(1.0);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - phase * b[i]);
    return std::sqrt(s * cell);
}

/// l2_error divided by the L2 norm of `a`.
inline double relative_l2_error(const std::vector<std::complex<double>>& a,
                                const std::vector<std::complex<double>>& b) {
    double na = 0.0;
    for (const auto& v : a) na += std::norm(v);
    if (!(na > 0.0)) throw DomainError("relative_l2_error: reference has zero norm");
    return l2_error(a, b) / std::sqrt(na);
}

inline double l2_error(const WavepacketState& a, const WavepacketState& b) {
    if (!(a.grid == b.grid)) throw DomainError("l2_error: states live on different grids");
    return l2_error(a.psi, b.psi, a.grid.cell());
}

}  // namespace polariton
