#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "polariton/analytic/wei_norman.hpp"
#include "polariton/numeric/fft.hpp"
#include "polariton/numeric/grid.hpp"

namespace polariton {

enum class Laplacian { spectral, central_difference };

/// H = p2 P^2 + p1 P + diag(V) on a 1-D grid.
struct DenseHamiltonian {
    std::complex<double> p2{};
    std::complex<double> p1{};
    std::vector<std::complex<double>> potential;
    Laplacian laplacian = Laplacian::spectral;

    static DenseHamiltonian kinetic(double mass, std::vector<std::complex<double>> v,
                                    Laplacian l = Laplacian::spectral) {
        return {1.0 / (2.0 * mass), 0.0, std::move(v), l};
    }

    /// p2 P^2 + p1 P + x_coeff x + one, with x sampled on the grid.
    static DenseHamiltonian from_coefficients(const TransverseGrid& grid,
                                              const HamiltonianCoefficients& h,
                                              Laplacian l = Laplacian::spectral) {
        std::vector<std::complex<double>> v(grid.nx());
        for (std::size_t i = 0; i < grid.nx(); ++i) v[i] = h.x * grid.x(i) + h.one;
        return {h.p2, h.p1, std::move(v), l};
    }
};

inline constexpr std::size_t dense_oracle_max_points = 128;

/// Matrix of H. Spectral derivatives use an explicit DFT sum (no FFT library), so the oracle
/// shares no transform code with the propagator:
///   (P^q)_{mn} = (1/N) sum_j k_j^q exp(i k_j (x_m - x_n)),
/// with the Nyquist mode dropped from P (odd power) so the matrix stays Hermitian.
inline Eigen::MatrixXcd dense_hamiltonian_matrix(const TransverseGrid& grid, const DenseHamiltonian& h) {
    if (grid.two_dimensional()) throw DomainError("dense oracle: 1-D grids only");
    const std::size_t n = grid.nx();
    if (n > dense_oracle_max_points) throw DomainError("dense oracle: grid exceeds 128 points");
    if (h.potential.size() != n) throw DomainError("dense oracle: potential size mismatch");
    const auto N = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(N, N);
    const double dx = grid.dx();
    if (h.laplacian == Laplacian::spectral) {
        const auto& k = grid.kx();
        for (std::size_t m = 0; m < n; ++m) {
            for (std::size_t q = 0; q < n; ++q) {
                std::complex<double> d1{}, d2{};
                const double dxmq = (static_cast<double>(m) - static_cast<double>(q)) * dx;
                for (std::size_t j = 0; j < n; ++j) {
                    const auto e = std::polar(1.0, k[j] * dxmq);
                    d2 += k[j] * k[j] * e;
                    if (j != n / 2) d1 += k[j] * e;
                }
                H(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(q)) =
                    (h.p2 * d2 + h.p1 * d1) / static_cast<double>(n);
            }
        }
    } else {
        const std::complex<double> i{0.0, 1.0};
        for (std::size_t m = 0; m < n; ++m) {
            const auto M = static_cast<Eigen::Index>(m);
            const auto up = static_cast<Eigen::Index>((m + 1) % n);
            const auto dn = static_cast<Eigen::Index>((m + n - 1) % n);
            // P^2 = -d^2/dx^2, P = -i d/dx
            H(M, M) += h.p2 * (2.0 / (dx * dx));
            H(M, up) += -h.p2 / (dx * dx) - i * h.p1 / (2.0 * dx);
            H(M, dn) += -h.p2 / (dx * dx) + i * h.p1 / (2.0 * dx);
        }
    }
    for (std::size_t m = 0; m < n; ++m)
        H(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)) += h.potential[m];
    return H;
}

/// exp(-i H t) psi computed with a dense matrix exponential.
inline std::vector<std::complex<double>> dense_propagator_oracle(
    const TransverseGrid& grid, const DenseHamiltonian& h, double t,
    const std::vector<std::complex<double>>& psi) {
    const Eigen::MatrixXcd H = dense_hamiltonian_matrix(grid, h);
    if (psi.size() != grid.nx()) throw DomainError("dense oracle: state size mismatch");
    if (t == 0.0) return psi;
    const Eigen::MatrixXcd U = (std::complex<double>(0.0, -t) * H).exp();
    const Eigen::Map<const Eigen::VectorXcd> in(psi.data(), static_cast<Eigen::Index>(psi.size()));
    const Eigen::VectorXcd out = U * in;
    return {out.data(), out.data() + out.size()};
}

/// Applies exp(g1 P^2) exp(g2 P) exp(g3 x) exp(g4) on the grid; P acts as k in frequency space.
inline std::vector<std::complex<double>> apply_factored_propagator(
    const TransverseGrid& grid, const WeiNormanSolution& s,
    const std::vector<std::complex<double>>& psi) {
    if (grid.two_dimensional()) throw DomainError("apply_factored_propagator: 1-D grids only");
    if (psi.size() != grid.nx()) throw DomainError("apply_factored_propagator: state size mismatch");
    GridFft fft(grid);
    auto* d = fft.data();
    for (std::size_t i = 0; i < grid.nx(); ++i) d[i] = std::exp(s.g3 * grid.x(i) + s.g4) * psi[i];
    fft.forward();
    const auto& k = grid.kx();
    for (std::size_t j = 0; j < grid.nx(); ++j) d[j] *= std::exp(s.g1 * k[j] * k[j] + s.g2 * k[j]);
    fft.inverse();
    std::vector<std::complex<double>> out;
    fft.store(out);
    return out;
}

}  // namespace polariton
