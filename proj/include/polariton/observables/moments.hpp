#pragma once

#include <cmath>

#include "polariton/errors.hpp"
#include "polariton/numeric/state.hpp"

namespace polariton {

class UndefinedMoments : public Error {
public:
    using Error::Error;
};

struct MomentSet {
    double norm = 0.0;
    double mean_x = 0.0;
    double mean_y = 0.0;
    double var_x = 0.0;
    double var_y = 0.0;
    double var_z = 0.0;  ///< only set by analytic 1-D forms
};

/// Riemann sums of |psi|^2-weighted coordinates. On the periodic grid these are spectrally
/// accurate for packets that vanish at the edges.
inline MomentSet moments(const WavepacketState& s) {
    const auto& g = s.grid;
    double n = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t iy = 0; iy < g.ny(); ++iy) {
        for (std::size_t ix = 0; ix < g.nx(); ++ix) {
            const double w = std::norm(s.at(ix, iy));
            n += w;
            sx += w * g.x(ix);
            sy += w * g.y(iy);
        }
    }
    if (!(n > 0.0) || !std::isfinite(n)) throw UndefinedMoments("moments: state has zero norm");
    MomentSet m;
    m.norm = n * g.cell();
    m.mean_x = sx / n;
    m.mean_y = sy / n;
    // second pass about the mean avoids cancellation for offset packets
    double vx = 0.0, vy = 0.0;
    for (std::size_t iy = 0; iy < g.ny(); ++iy) {
        const double dy = g.y(iy) - m.mean_y;
        for (std::size_t ix = 0; ix < g.nx(); ++ix) {
            const double w = std::norm(s.at(ix, iy));
            const double dx = g.x(ix) - m.mean_x;
            vx += w * dx * dx;
            vy += w * dy * dy;
        }
    }
    m.var_x = vx / n;
    m.var_y = vy / n;
    return m;
}

/// Overload taking the grid separately, for call sites that hold it apart from the state.
inline MomentSet moments(const WavepacketState& s, const TransverseGrid& grid) {
    if (!(s.grid == grid)) throw DomainError("moments: state lives on a different grid");
    return moments(s);
}

}  // namespace polariton
