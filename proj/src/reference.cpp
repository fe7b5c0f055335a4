#include "energylab/reference.hpp"

#include <cmath>
#include <vector>

namespace energylab::ref {

namespace {

const double box_volume = two_pi * two_pi * two_pi;

struct Mode {
    int k[3];
    std::size_t flat;
};

// All modes inside the dealias sphere, zero mode excluded.
std::vector<Mode> ball_modes(const Grid& g) {
    const int radius = g.dealias_radius();
    std::vector<Mode> modes;
    for (std::size_t i = 0; i < g.volume(); ++i) {
        const auto k = g.wavevector(i);
        const int l = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        if (l == 0 || l > radius * radius) continue;
        modes.push_back(Mode{{k[0], k[1], k[2]}, i});
    }
    return modes;
}

}  // namespace

SpectralField advective_term_convolution(const SpectralField& u, const SpectralField& v) {
    require_same_grid(u.grid(), v.grid());
    const Grid& g = u.grid();
    const auto modes = ball_modes(g);
    const int radius = g.dealias_radius();
    SpectralField out(g);
    const Complex I{0.0, 1.0};
    for (const Mode& km : modes) {
        Complex acc[3] = {};
        for (const Mode& pm : modes) {
            const int q[3] = {km.k[0] - pm.k[0], km.k[1] - pm.k[1], km.k[2] - pm.k[2]};
            const int lq = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
            if (lq == 0 || lq > radius * radius) continue;
            const int n = g.n();
            auto wrap = [n](int w) { return w >= 0 ? w : w + n; };
            const std::size_t qi = g.index(wrap(q[0]), wrap(q[1]), wrap(q[2]));
            const Complex udotq = static_cast<double>(q[0]) * u.component(0)[pm.flat] +
                                  static_cast<double>(q[1]) * u.component(1)[pm.flat] +
                                  static_cast<double>(q[2]) * u.component(2)[pm.flat];
            for (int c = 0; c < 3; ++c) acc[c] += udotq * v.component(c)[qi];
        }
        for (int c = 0; c < 3; ++c) out.component(c)[km.flat] = I * acc[c];
    }
    energylab::ref::leray_project_inplace(out);
    return out;
}

double trilinear_convolution(const SpectralField& u, const SpectralField& v,
                             const SpectralField& w) {
    const SpectralField b = advective_term_convolution(u, v);
    return energylab::ref::inner(b, w);
}

PhysicalField dft_to_physical(const SpectralField& u) {
    const Grid& g = u.grid();
    const int n = g.n();
    PhysicalField out(g);
    for (int c = 0; c < 3; ++c) {
        for (int jx = 0; jx < n; ++jx)
            for (int jy = 0; jy < n; ++jy)
                for (int jz = 0; jz < n; ++jz) {
                    Complex acc{0.0, 0.0};
                    for (std::size_t i = 0; i < g.volume(); ++i) {
                        const auto k = g.wavevector(i);
                        const double phase =
                            two_pi *
                            (double(k[0]) * jx + double(k[1]) * jy + double(k[2]) * jz) / n;
                        acc += u.component(c)[i] * Complex{std::cos(phase), std::sin(phase)};
                    }
                    out.component(c)[g.index(jx, jy, jz)] = acc.real();
                }
    }
    return out;
}

double sobolev_norm(const SpectralField& u, double s) {
    const Grid& g = u.grid();
    double acc = 0.0;
    for (std::size_t i = 0; i < g.volume(); ++i) {
        const auto k = g.wavevector(i);
        const double l = double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
        if (l == 0.0) continue;
        acc += std::pow(l, s) * (std::norm(u.component(0)[i]) + std::norm(u.component(1)[i]) +
                                 std::norm(u.component(2)[i]));
    }
    return std::sqrt(box_volume * acc);
}

double inner(const SpectralField& u, const SpectralField& v) {
    require_same_grid(u.grid(), v.grid());
    auto du = u.data();
    auto dv = v.data();
    double acc = 0.0;
    for (std::size_t i = 0; i < du.size(); ++i)
        acc += du[i].real() * dv[i].real() + du[i].imag() * dv[i].imag();
    return box_volume * acc;
}

double max_divergence_stencil(const PhysicalField& p) {
    const Grid& g = p.grid();
    const int n = g.n();
    const double h = g.spacing();
    double worst = 0.0;
    auto wrap = [n](int j) { return (j + n) % n; };
    for (int jx = 0; jx < n; ++jx)
        for (int jy = 0; jy < n; ++jy)
            for (int jz = 0; jz < n; ++jz) {
                const double dx = (p.component(0)[g.index(wrap(jx + 1), jy, jz)] -
                                   p.component(0)[g.index(wrap(jx - 1), jy, jz)]) /
                                  (2.0 * h);
                const double dy = (p.component(1)[g.index(jx, wrap(jy + 1), jz)] -
                                   p.component(1)[g.index(jx, wrap(jy - 1), jz)]) /
                                  (2.0 * h);
                const double dz = (p.component(2)[g.index(jx, jy, wrap(jz + 1))] -
                                   p.component(2)[g.index(jx, jy, wrap(jz - 1))]) /
                                  (2.0 * h);
                worst = std::max(worst, std::abs(dx + dy + dz));
            }
    return worst;
}

double gradient_energy_quadrature(const SpectralField& u) {
    const Grid& g = u.grid();
    double acc = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
        SpectralField d(g);
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < g.volume(); ++i) {
                const auto k = g.wavevector(i);
                d.component(c)[i] =
                    Complex{0.0, 1.0} * static_cast<double>(k[axis]) * u.component(c)[i];
            }
        const PhysicalField pd = dft_to_physical(d);
        const double cell = box_volume / static_cast<double>(g.volume());
        for (std::size_t i = 0; i < 3 * g.volume(); ++i)
            acc += cell * pd.data()[i] * pd.data()[i];
    }
    return acc;
}

double l2_quadrature(const PhysicalField& p) {
    const Grid& g = p.grid();
    const double cell = box_volume / static_cast<double>(g.volume());
    double acc = 0.0;
    for (double v : p.data()) acc += cell * v * v;
    return acc;
}

void leray_project_inplace(SpectralField& u) {
    const Grid& g = u.grid();
    for (std::size_t i = 0; i < g.volume(); ++i) {
        const auto k = g.wavevector(i);
        const double l = double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
        if (l == 0.0) {
            for (int c = 0; c < 3; ++c) u.component(c)[i] = Complex{0.0, 0.0};
            continue;
        }
        const Complex kd = (double(k[0]) * u.component(0)[i] + double(k[1]) * u.component(1)[i] +
                            double(k[2]) * u.component(2)[i]) /
                           l;
        for (int c = 0; c < 3; ++c) u.component(c)[i] -= double(k[c]) * kd;
    }
}

}  // namespace energylab::ref
