#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "polariton/constants.hpp"
#include "polariton/errors.hpp"

namespace polariton {

/// Periodic transverse grid on [-X, X) x [-Y, Y). A 1-D grid has ny == 1 and no y axis.
///
/// Sample i sits at x_i = -X + i dx, dx = 2X/nx. Frequencies follow the unnormalized-forward
/// DFT ordering: k_j = 2 pi j / (2X) for j < nx/2, k_j = 2 pi (j - nx) / (2X) otherwise.
/// Storage is row-major, index iy * nx + ix.
class TransverseGrid {
public:
    static TransverseGrid one_d(std::size_t nx, double X) { return TransverseGrid(nx, X, 1, 0.0); }
    static TransverseGrid two_d(std::size_t nx, double X, std::size_t ny, double Y) {
        if (ny < 8) throw ConfigError("TransverseGrid: ny must be >= 8 for a 2-D grid");
        return TransverseGrid(nx, X, ny, Y);
    }

    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }
    std::size_t size() const { return nx_ * ny_; }
    bool two_dimensional() const { return ny_ > 1; }
    double extent_x() const { return X_; }
    double extent_y() const { return Y_; }
    double dx() const { return dx_; }
    double dy() const { return dy_; }
    /// Area (or length) element of one sample.
    double cell() const { return two_dimensional() ? dx_ * dy_ : dx_; }

    double x(std::size_t i) const { return -X_ + static_cast<double>(i) * dx_; }
    double y(std::size_t j) const { return two_dimensional() ? -Y_ + static_cast<double>(j) * dy_ : 0.0; }
    const std::vector<double>& kx() const { return kx_; }
    const std::vector<double>& ky() const { return ky_; }
    double kx_max() const { return constants::pi / dx_; }
    double ky_max() const { return two_dimensional() ? constants::pi / dy_ : 0.0; }

    bool operator==(const TransverseGrid& o) const {
        return nx_ == o.nx_ && ny_ == o.ny_ && X_ == o.X_ && Y_ == o.Y_;
    }

private:
    TransverseGrid(std::size_t nx, double X, std::size_t ny, double Y)
        : nx_(nx), ny_(ny), X_(X), Y_(Y) {
        check_axis(nx, X, "x");
        dx_ = 2.0 * X / static_cast<double>(nx);
        kx_ = frequencies(nx, X);
        if (ny > 1) {
            check_axis(ny, Y, "y");
            dy_ = 2.0 * Y / static_cast<double>(ny);
            ky_ = frequencies(ny, Y);
        } else {
            ky_ = {0.0};
        }
    }

    static void check_axis(std::size_t n, double extent, const char* name) {
        if (n < 8 || (n & (n - 1)) != 0)
            throw ConfigError(std::string("TransverseGrid: n") + name + " must be a power of two >= 8");
        if (!(extent > 0.0)) throw ConfigError(std::string("TransverseGrid: extent ") + name + " must be > 0");
    }

    static std::vector<double> frequencies(std::size_t n, double extent) {
        std::vector<double> k(n);
        const double dk = constants::two_pi / (2.0 * extent);
        const auto half = static_cast<std::ptrdiff_t>(n / 2);
        for (std::size_t j = 0; j < n; ++j) {
            auto m = static_cast<std::ptrdiff_t>(j);
            if (m >= half) m -= static_cast<std::ptrdiff_t>(n);
            k[j] = dk * static_cast<double>(m);
        }
        return k;
    }

    std::size_t nx_;
    std::size_t ny_;
    double X_;
    double Y_;
    double dx_ = 0.0;
    double dy_ = 0.0;
    std::vector<double> kx_;
    std::vector<double> ky_;
};

}  // namespace polariton
