#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <mutex>
#include <vector>

#include <fftw3.h>

#include "polariton/errors.hpp"
#include "polariton/numeric/grid.hpp"

namespace polariton {

namespace detail {
// The FFTW planner keeps global state; execution of existing plans is thread-safe.
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace detail

/// In-place forward/inverse transform over a grid-sized buffer it owns.
///
/// forward: F_k = sum_n f_n e^{-i k x_n} (unnormalized); inverse divides by N, so
/// inverse(forward(f)) == f.
class GridFft {
public:
    explicit GridFft(const TransverseGrid& grid) : n_(grid.size()) {
        data_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(n_));
        if (!data_) throw NumericalFailure("GridFft: allocation failed", 0);
        auto* raw = reinterpret_cast<fftw_complex*>(data_);
        {
        std::lock_guard lock(detail::fftw_planner_mutex());
        if (grid.two_dimensional()) {
            const int ny = static_cast<int>(grid.ny());
            const int nx = static_cast<int>(grid.nx());
            forward_ = fftw_plan_dft_2d(ny, nx, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
            backward_ = fftw_plan_dft_2d(ny, nx, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
        } else {
            const int nx = static_cast<int>(grid.nx());
            forward_ = fftw_plan_dft_1d(nx, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
            backward_ = fftw_plan_dft_1d(nx, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
        }
        }
        if (!forward_ || !backward_) {
            release();
            throw NumericalFailure("GridFft: plan creation failed", 0);
        }
    }

    GridFft(const GridFft&) = delete;
    GridFft& operator=(const GridFft&) = delete;
    ~GridFft() { release(); }

    std::complex<double>* data() { return data_; }
    const std::complex<double>* data() const { return data_; }
    std::size_t size() const { return n_; }

    void load(const std::vector<std::complex<double>>& v) { std::copy(v.begin(), v.end(), data_); }
    void store(std::vector<std::complex<double>>& v) const { v.assign(data_, data_ + n_); }

    void forward() { fftw_execute(forward_); }
    void inverse() {
        fftw_execute(backward_);
        const double s = 1.0 / static_cast<double>(n_);
        for (std::size_t i = 0; i < n_; ++i) data_[i] *= s;
    }

private:
    void release() {
        std::lock_guard lock(detail::fftw_planner_mutex());
        if (forward_) fftw_destroy_plan(forward_);
        if (backward_) fftw_destroy_plan(backward_);
        forward_ = backward_ = nullptr;
        if (data_) fftw_free(data_);
        data_ = nullptr;
    }

    std::size_t n_;
    std::complex<double>* data_ = nullptr;
    fftw_plan forward_ = nullptr;
    fftw_plan backward_ = nullptr;
};

}  // namespace polariton
