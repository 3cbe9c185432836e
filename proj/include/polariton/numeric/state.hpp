#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "polariton/analytic/gaussian.hpp"
#include "polariton/numeric/grid.hpp"

namespace polariton {

struct WavepacketState {
    TransverseGrid grid;
    std::vector<std::complex<double>> psi;  ///< row-major, iy * nx + ix
    double z_center = 0.0;                  ///< comoving longitudinal center, m
    double time = 0.0;                      ///< s
    double norm = 1.0;                      ///< norm at the last sample
    double var_z = 0.0;                     ///< longitudinal variance, constant in the comoving frame
    // On a 1-D grid the y factor stays a free Gaussian; its initial moments are kept here.
    double mean_y0 = 0.0;
    double var_y0 = 0.0;

    explicit WavepacketState(TransverseGrid g) : grid(std::move(g)), psi(grid.size()) {}
    std::complex<double>& at(std::size_t ix, std::size_t iy = 0) { return psi[iy * grid.nx() + ix]; }
    const std::complex<double>& at(std::size_t ix, std::size_t iy = 0) const {
        return psi[iy * grid.nx() + ix];
    }
};

/// Discrete norm sum |psi|^2 dA.
inline double discrete_norm(const WavepacketState& s) {
    double n = 0.0;
    for (const auto& v : s.psi) n += std::norm(v);
    return n * s.grid.cell();
}

/// Samples the Gaussian of `spec` on the grid and normalizes it discretely. On a 1-D grid only
/// the x factor is sampled.
///
/// Padding: a packet wider than a quarter of the grid is rejected; the recommended extent is at
/// least 8 widths, and `padding_ok` reports whether that holds.
inline WavepacketState initialize_gaussian(const TransverseGrid& grid, const GaussianSpec& spec,
                                           bool* padding_ok = nullptr) {
    spec.validate();
    const double full_x = 2.0 * grid.extent_x();
    const double full_y = 2.0 * grid.extent_y();
    bool ok = true;
    if (spec.width_x() > full_x / 4.0) throw ConfigError("initialize_gaussian: packet wider than grid/4 in x");
    if (spec.width_x() * 8.0 > full_x) ok = false;
    if (grid.two_dimensional()) {
        if (spec.width_y() > full_y / 4.0) throw ConfigError("initialize_gaussian: packet wider than grid/4 in y");
        if (spec.width_y() * 8.0 > full_y) ok = false;
    }
    if (padding_ok) *padding_ok = ok;

    WavepacketState s(grid);
    for (std::size_t iy = 0; iy < grid.ny(); ++iy) {
        const double dy = grid.y(iy) - spec.a_y;
        const double fy = grid.two_dimensional() ? std::exp(-0.5 * spec.alpha_y * dy * dy) : 1.0;
        for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
            const double dx = grid.x(ix) - spec.a_x;
            s.at(ix, iy) = fy * std::exp(-0.5 * spec.alpha_x * dx * dx);
        }
    }
    const double n = discrete_norm(s);
    if (!(n > 0.0)) throw ConfigError("initialize_gaussian: packet does not overlap the grid");
    const double scale = 1.0 / std::sqrt(n);
    for (auto& v : s.psi) v *= scale;
    s.norm = 1.0;
    s.var_z = 1.0 / (2.0 * spec.alpha_z);
    s.mean_y0 = spec.a_y;
    s.var_y0 = 1.0 / (2.0 * spec.alpha_y);
    return s;
}

}  // namespace polariton
