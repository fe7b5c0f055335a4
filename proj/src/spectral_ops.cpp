#include "energylab/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "energylab/kernels.hpp"
#include "energylab/transform.hpp"

namespace energylab {

namespace {

const double box_volume = two_pi * two_pi * two_pi;

// lambda = |k|^2 is an integer; powers are tabulated per call.
std::vector<double> lambda_pow_table(const Grid& g, double s) {
    const int half = g.n() / 2;
    const int lmax = 3 * half * half;
    std::vector<double> t(static_cast<std::size_t>(lmax) + 1, 0.0);
    for (int l = 1; l <= lmax; ++l) t[static_cast<std::size_t>(l)] = std::pow(static_cast<double>(l), s);
    return t;
}

}  // namespace

SobolevExponent::SobolevExponent(double value) : s(value) {
    if (!std::isfinite(value) || value < 0.0)
        throw std::invalid_argument("SobolevExponent: s must be finite and >= 0");
}

Cutoff::Cutoff(double value) : kappa(value) {
    if (!std::isfinite(value) || value <= 0.0)
        throw std::invalid_argument("Cutoff: kappa must be finite and > 0");
}

bool InvariantReport::ok(double tol) const {
    const double scale = std::max(amplitude, 1e-300);
    return hermitian_violation <= tol * scale && divergence_violation <= tol * scale &&
           mean_violation <= tol * scale && support_violation <= tol * scale;
}

InvariantReport check_invariants(const SpectralField& u) {
    const Grid& g = u.grid();
    const std::size_t vol = g.volume();
    const int n = g.n();
    const double r2 = static_cast<double>(g.dealias_radius()) * g.dealias_radius();
    InvariantReport rep;
    rep.mean_violation = std::sqrt(std::norm(u.at(0, 0, 0, 0)) + std::norm(u.at(1, 0, 0, 0)) +
                                   std::norm(u.at(2, 0, 0, 0)));
    rep.amplitude = kernels::det_max(3 * vol, [&](std::size_t i) { return std::abs(u.data()[i]); });
    rep.divergence_violation = kernels::det_max(vol, [&](std::size_t i) {
        const auto k = g.wavevector(i);
        Complex d = static_cast<double>(k[0]) * u.component(0)[i] +
                    static_cast<double>(k[1]) * u.component(1)[i] +
                    static_cast<double>(k[2]) * u.component(2)[i];
        return std::abs(d);
    });
    rep.support_violation = kernels::det_max(3 * vol, [&](std::size_t i) {
        const auto k = g.wavevector(i % vol);
        const double l = double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
        return l > r2 ? std::abs(u.data()[i]) : 0.0;
    });
    // Hermitian symmetry: compare each mode against its mirror.
    rep.hermitian_violation = kernels::det_max(3 * vol, [&](std::size_t i) {
        const int c = static_cast<int>(i / vol);
        const std::size_t f = i % vol;
        const int iz = static_cast<int>(f % n);
        const int iy = static_cast<int>((f / n) % n);
        const int ix = static_cast<int>(f / (static_cast<std::size_t>(n) * n));
        const int mx = ix == 0 ? 0 : n - ix;
        const int my = iy == 0 ? 0 : n - iy;
        const int mz = iz == 0 ? 0 : n - iz;
        return std::abs(u.at(c, ix, iy, iz) - std::conj(u.at(c, mx, my, mz)));
    });
    return rep;
}

void leray_project_inplace(SpectralField& u) {
    const Grid& g = u.grid();
    const std::size_t vol = g.volume();
    Complex* ux = u.component(0);
    Complex* uy = u.component(1);
    Complex* uz = u.component(2);
    kernels::par_for(vol, [&](std::size_t i) {
        const auto k = g.wavevector(i);
        const double l = double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
        if (l == 0.0) {
            ux[i] = uy[i] = uz[i] = Complex{0.0, 0.0};
            return;
        }
        const Complex kd = (static_cast<double>(k[0]) * ux[i] + static_cast<double>(k[1]) * uy[i] +
                            static_cast<double>(k[2]) * uz[i]) /
                           l;
        ux[i] -= static_cast<double>(k[0]) * kd;
        uy[i] -= static_cast<double>(k[1]) * kd;
        uz[i] -= static_cast<double>(k[2]) * kd;
    });
}

SpectralField leray_project(const SpectralField& raw) {
    SpectralField out = raw;
    leray_project_inplace(out);
    return out;
}

void dealias_inplace(SpectralField& u) {
    const Grid& g = u.grid();
    const std::size_t vol = g.volume();
    const double r2 = static_cast<double>(g.dealias_radius()) * g.dealias_radius();
    for (int c = 0; c < 3; ++c) {
        Complex* p = u.component(c);
        kernels::par_for(vol, [&](std::size_t i) {
            const auto k = g.wavevector(i);
            const double l = double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
            if (l > r2) p[i] = Complex{0.0, 0.0};
        });
    }
}

void scale_inplace(SpectralField& u, double a) {
    auto d = u.data();
    kernels::par_for(d.size(), [&](std::size_t i) { d[i] *= a; });
}

void add_scaled_inplace(SpectralField& u, const SpectralField& v, Complex a) {
    require_same_grid(u.grid(), v.grid());
    auto du = u.data();
    auto dv = v.data();
    kernels::par_for(du.size(), [&](std::size_t i) { du[i] += a * dv[i]; });
}

SpectralField curl(const SpectralField& u) {
    const Grid& g = u.grid();
    SpectralField w(g);
    const std::size_t vol = g.volume();
    const Complex* ux = u.component(0);
    const Complex* uy = u.component(1);
    const Complex* uz = u.component(2);
    Complex* wx = w.component(0);
    Complex* wy = w.component(1);
    Complex* wz = w.component(2);
    const Complex I{0.0, 1.0};
    kernels::par_for(vol, [&](std::size_t i) {
        const auto k = g.wavevector(i);
        const double kx = k[0], ky = k[1], kz = k[2];
        wx[i] = I * (ky * uz[i] - kz * uy[i]);
        wy[i] = I * (kz * ux[i] - kx * uz[i]);
        wz[i] = I * (kx * uy[i] - ky * ux[i]);
    });
    return w;
}

double inner(const SpectralField& u, const SpectralField& v) {
    require_same_grid(u.grid(), v.grid());
    auto du = u.data();
    auto dv = v.data();
    return box_volume * kernels::det_sum(du.size(), [&](std::size_t i) {
               return du[i].real() * dv[i].real() + du[i].imag() * dv[i].imag();
           });
}

double l2_norm_sq(const SpectralField& u) {
    auto d = u.data();
    return box_volume * kernels::det_sum(d.size(), [&](std::size_t i) { return std::norm(d[i]); });
}

double sobolev_norm(const SpectralField& u, SobolevExponent s) {
    const Grid& g = u.grid();
    const std::size_t vol = g.volume();
    const auto table = lambda_pow_table(g, s.s);
    const double sum = kernels::det_sum(vol, [&](std::size_t i) {
        const auto k = g.wavevector(i);
        const int l = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        if (l == 0) return 0.0;
        const double w = table[static_cast<std::size_t>(l)];
        return w * (std::norm(u.component(0)[i]) + std::norm(u.component(1)[i]) +
                    std::norm(u.component(2)[i]));
    });
    return std::sqrt(box_volume * sum);
}

double lebesgue_norm(const SpectralField& u, double p) {
    if (!(p >= 1.0) || !std::isfinite(p))
        throw std::invalid_argument("lebesgue_norm: p must be >= 1");
    const Grid& g = u.grid();
    const PhysicalField phys = transforms_for(g).to_physical(u);
    const std::size_t vol = g.volume();
    const double* x = phys.component(0);
    const double* y = phys.component(1);
    const double* z = phys.component(2);
    const double cell = box_volume / static_cast<double>(vol);
    const double integral = kernels::det_sum(vol, [&](std::size_t i) {
        const double m2 = x[i] * x[i] + y[i] * y[i] + z[i] * z[i];
        return std::pow(m2, 0.5 * p);
    });
    return std::pow(cell * integral, 1.0 / p);
}

CutoffDecomposition split(const SpectralField& u, Cutoff kappa) {
    const Grid& g = u.grid();
    CutoffDecomposition dec{SpectralField(g), SpectralField(g), kappa};
    const std::size_t vol = g.volume();
    for (int c = 0; c < 3; ++c) {
        const Complex* src = u.component(c);
        Complex* lo = dec.low.component(c);
        Complex* hi = dec.high.component(c);
        kernels::par_for(vol, [&](std::size_t i) {
            const auto k = g.wavevector(i);
            const double l = double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
            if (l <= kappa.kappa)
                lo[i] = src[i];
            else
                hi[i] = src[i];
        });
    }
    return dec;
}

std::pair<double, double> bernstein_gaps(const SpectralField& u, Cutoff kappa,
                                         SobolevExponent alpha, SobolevExponent beta) {
    if (!(beta.s > alpha.s))
        throw std::invalid_argument("bernstein_gaps: beta must exceed alpha");
    const CutoffDecomposition dec = split(u, kappa);
    const double half_gap = 0.5 * (beta.s - alpha.s);
    const double low_gap = std::pow(kappa.kappa, half_gap) * sobolev_norm(dec.low, alpha) -
                           sobolev_norm(dec.low, beta);
    const double high_gap = std::pow(kappa.kappa, -half_gap) * sobolev_norm(dec.high, beta) -
                            sobolev_norm(dec.high, alpha);
    return {low_gap, high_gap};
}

namespace detail {
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}
}  // namespace detail

namespace {

// Two standard Gaussians from a per-mode counter stream.
struct CounterGauss {
    std::uint64_t state;
    explicit CounterGauss(std::uint64_t seed, std::uint64_t counter)
        : state(detail::splitmix64(seed ^ detail::splitmix64(counter * 0x9E3779B97F4A7C15ULL + 1))) {}
    double uniform() {
        state = detail::splitmix64(state);
        return (static_cast<double>(state >> 11) + 0.5) * 0x1.0p-53;
    }
    std::pair<double, double> gaussian_pair() {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(two_pi * u2), r * std::sin(two_pi * u2)};
    }
};

int shell_of(const std::array<int, 3>& k) {
    const double m = std::sqrt(double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2]);
    return static_cast<int>(std::lround(m));
}

bool canonical_half(const std::array<int, 3>& k) {
    if (k[0] != 0) return k[0] > 0;
    if (k[1] != 0) return k[1] > 0;
    return k[2] > 0;
}

}  // namespace

SpectralField random_divfree_field(const Grid& grid, double spectrum_slope, std::uint64_t seed) {
    const int radius = grid.dealias_radius();
    const double r2 = static_cast<double>(radius) * radius;
    const std::size_t vol = grid.volume();

    std::vector<std::size_t> shell_count(static_cast<std::size_t>(radius) + 1, 0);
    for (std::size_t i = 0; i < vol; ++i) {
        const auto k = grid.wavevector(i);
        const double l = double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
        if (l == 0.0 || l > r2) continue;
        const int m = shell_of(k);
        if (m >= 1 && m <= radius) ++shell_count[static_cast<std::size_t>(m)];
    }

    SpectralField u(grid);
    for (int c = 0; c < 3; ++c) {
        Complex* dst = u.component(c);
        kernels::par_for(vol, [&](std::size_t i) {
            const auto k = grid.wavevector(i);
            const double l = double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
            if (l == 0.0 || l > r2) return;
            const int m = shell_of(k);
            if (m < 1 || m > radius || shell_count[static_cast<std::size_t>(m)] == 0) return;
            const double sigma =
                std::sqrt(std::pow(static_cast<double>(m), -spectrum_slope) /
                          (3.0 * static_cast<double>(shell_count[static_cast<std::size_t>(m)])));
            // Both halves draw from the canonical mode's stream.
            const bool canon = canonical_half(k);
            const std::array<int, 3> kc = canon ? k : std::array<int, 3>{-k[0], -k[1], -k[2]};
            const int n = grid.n();
            auto wrap = [n](int q) { return q >= 0 ? q : q + n; };
            const std::uint64_t counter =
                grid.index(wrap(kc[0]), wrap(kc[1]), wrap(kc[2])) * 3 + static_cast<std::uint64_t>(c);
            CounterGauss rng(seed, counter);
            const auto [g1, g2] = rng.gaussian_pair();
            const Complex val{sigma * g1, sigma * g2};
            dst[i] = canon ? val : std::conj(val);
        });
    }
    leray_project_inplace(u);
    return u;
}

std::vector<double> shell_spectrum(const SpectralField& u) {
    const Grid& g = u.grid();
    const int radius = g.dealias_radius();
    std::vector<double> energy(static_cast<std::size_t>(radius) + 1, 0.0);
    const std::size_t vol = g.volume();
    for (std::size_t i = 0; i < vol; ++i) {
        const auto k = g.wavevector(i);
        if (k[0] == 0 && k[1] == 0 && k[2] == 0) continue;
        const int m = shell_of(k);
        if (m < 1 || m > radius) continue;
        energy[static_cast<std::size_t>(m)] +=
            box_volume * (std::norm(u.component(0)[i]) + std::norm(u.component(1)[i]) +
                          std::norm(u.component(2)[i]));
    }
    return energy;
}

SpectralField embed(const SpectralField& u, const Grid& fine) {
    const Grid& g = u.grid();
    if (fine.n() < g.n()) throw std::invalid_argument("embed: target grid is coarser");
    SpectralField out(fine);
    const std::size_t vol = g.volume();
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < vol; ++i) {
            const auto k = g.wavevector(i);
            if (std::abs(k[0]) == g.n() / 2 || std::abs(k[1]) == g.n() / 2 ||
                std::abs(k[2]) == g.n() / 2)
                continue;  // shared Nyquist bins stay empty
            out.mode(c, k[0], k[1], k[2]) = u.component(c)[i];
        }
    }
    return out;
}

}  // namespace energylab
