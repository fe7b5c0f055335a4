#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

namespace energylab {

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Cubic Fourier grid on the periodic box [0, 2pi)^3. Modes are stored in
// wrap-around order along each axis: index j holds frequency j for
// j <= n/2 and j - n otherwise. Quadratic products are truncated to the
// spherical shell |k| <= dealias_radius() = floor(n/3).
class Grid {
public:
    explicit Grid(int n) : n_(n) {
        if (n < 4 || n % 2 != 0)
            throw std::invalid_argument("Grid: n must be even and >= 4");
    }

    int n() const noexcept { return n_; }
    int dealias_radius() const noexcept { return n_ / 3; }

    // Largest Stokes eigenvalue |k|^2 among retained (dealiased) modes.
    double lambda_max() const noexcept {
        const double k = dealias_radius();
        return k * k;
    }

    std::size_t volume() const noexcept {
        return static_cast<std::size_t>(n_) * n_ * n_;
    }

    double spacing() const noexcept { return two_pi / n_; }

    int freq(int idx) const noexcept { return idx <= n_ / 2 ? idx : idx - n_; }

    std::size_t index(int ix, int iy, int iz) const noexcept {
        return (static_cast<std::size_t>(ix) * n_ + iy) * n_ + iz;
    }

    std::array<int, 3> wavevector(std::size_t flat) const noexcept {
        const int iz = static_cast<int>(flat % n_);
        const int iy = static_cast<int>((flat / n_) % n_);
        const int ix = static_cast<int>(flat / (static_cast<std::size_t>(n_) * n_));
        return {freq(ix), freq(iy), freq(iz)};
    }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    int n_;
};

}  // namespace energylab
