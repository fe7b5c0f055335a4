#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "energylab/grid.hpp"

namespace energylab {

using Complex = std::complex<double>;

// Velocity field as Fourier-series coefficients: u(x) = sum_k c(k) e^{i k.x}.
// Storage is component-major, each component a full n^3 cube in wrap-around
// order, so |u|_{L^2}^2 = (2pi)^3 sum_k |c(k)|^2.
//
// Contracts maintained by the operations in this library (and validated by
// check_invariants): conj symmetry c(-k) = conj(c(k)), c(0) = 0, k.c(k) = 0,
// and support inside the dealias sphere |k| <= floor(n/3).
class SpectralField {
public:
    explicit SpectralField(const Grid& grid)
        : grid_(grid), coeffs_(3 * grid.volume(), Complex{0.0, 0.0}) {}

    const Grid& grid() const noexcept { return grid_; }

    Complex* component(int c) noexcept { return coeffs_.data() + c * grid_.volume(); }
    const Complex* component(int c) const noexcept {
        return coeffs_.data() + c * grid_.volume();
    }

    Complex& at(int c, int ix, int iy, int iz) noexcept {
        return component(c)[grid_.index(ix, iy, iz)];
    }
    const Complex& at(int c, int ix, int iy, int iz) const noexcept {
        return component(c)[grid_.index(ix, iy, iz)];
    }

    // Coefficient addressed by signed frequencies.
    Complex& mode(int c, int kx, int ky, int kz) {
        return component(c)[mode_index(kx, ky, kz)];
    }
    const Complex& mode(int c, int kx, int ky, int kz) const {
        return const_cast<SpectralField*>(this)->mode(c, kx, ky, kz);
    }

    std::span<Complex> data() noexcept { return coeffs_; }
    std::span<const Complex> data() const noexcept { return coeffs_; }

    friend bool operator==(const SpectralField&, const SpectralField&) = default;

private:
    std::size_t mode_index(int kx, int ky, int kz) const {
        const int n = grid_.n();
        auto wrap = [n](int k) {
            if (k < -n / 2 || k > n / 2) throw std::out_of_range("mode out of range");
            return k >= 0 ? k : k + n;
        };
        return grid_.index(wrap(kx), wrap(ky), wrap(kz));
    }

    Grid grid_;
    std::vector<Complex> coeffs_;
};

// Collocation samples on the n^3 grid, component-major, x_j = 2pi j / n.
class PhysicalField {
public:
    explicit PhysicalField(const Grid& grid)
        : grid_(grid), values_(3 * grid.volume(), 0.0) {}

    const Grid& grid() const noexcept { return grid_; }

    double* component(int c) noexcept { return values_.data() + c * grid_.volume(); }
    const double* component(int c) const noexcept {
        return values_.data() + c * grid_.volume();
    }

    std::span<double> data() noexcept { return values_; }
    std::span<const double> data() const noexcept { return values_; }

private:
    Grid grid_;
    std::vector<double> values_;
};

inline void require_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b)) throw std::invalid_argument("grid mismatch");
}

}  // namespace energylab
