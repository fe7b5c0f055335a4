#include "energylab/trilinear.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "energylab/kernels.hpp"
#include "energylab/transform.hpp"

namespace energylab {

namespace {

// Collocation samples of all nine partial derivatives d_i v_j.
std::array<std::vector<double>, 9> gradient_samples(const SpectralField& v,
                                                    const FourierTransform& ft) {
    const Grid& g = v.grid();
    const std::size_t vol = g.volume();
    std::array<std::vector<double>, 9> out;
    std::vector<Complex> work(vol);
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i) {
            const Complex* src = v.component(j);
            kernels::par_for(vol, [&](std::size_t m) {
                const auto k = g.wavevector(m);
                work[m] = Complex{0.0, 1.0} * static_cast<double>(k[i]) * src[m];
            });
            ft.backward_cube(work.data());
            auto& slot = out[static_cast<std::size_t>(3 * j + i)];
            slot.resize(vol);
            kernels::par_for(vol, [&](std::size_t m) { slot[m] = work[m].real(); });
        }
    }
    return out;
}

// (a . grad v) sampled pointwise, transformed back, truncated, projected.
SpectralField assemble_advective(const PhysicalField& a,
                                 const std::array<std::vector<double>, 9>& grad_v,
                                 const FourierTransform& ft) {
    const Grid& g = a.grid();
    const std::size_t vol = g.volume();
    PhysicalField prod(g);
    for (int j = 0; j < 3; ++j) {
        const double* dx = grad_v[static_cast<std::size_t>(3 * j + 0)].data();
        const double* dy = grad_v[static_cast<std::size_t>(3 * j + 1)].data();
        const double* dz = grad_v[static_cast<std::size_t>(3 * j + 2)].data();
        const double* ax = a.component(0);
        const double* ay = a.component(1);
        const double* az = a.component(2);
        double* dst = prod.component(j);
        kernels::par_for(vol, [&](std::size_t m) {
            dst[m] = ax[m] * dx[m] + ay[m] * dy[m] + az[m] * dz[m];
        });
    }
    SpectralField result = ft.from_physical(prod);
    dealias_inplace(result);
    leray_project_inplace(result);
    return result;
}

}  // namespace

SpectralField advective_term(const SpectralField& u, const SpectralField& v) {
    require_same_grid(u.grid(), v.grid());
    const FourierTransform& ft = transforms_for(u.grid());
    const PhysicalField phys_u = ft.to_physical(u);
    const auto grad_v = gradient_samples(v, ft);
    return assemble_advective(phys_u, grad_v, ft);
}

SpectralField rotational_advective(const SpectralField& u) {
    const Grid& g = u.grid();
    const FourierTransform& ft = transforms_for(g);
    const PhysicalField pu = ft.to_physical(u);
    const PhysicalField pw = ft.to_physical(curl(u));
    const std::size_t vol = g.volume();
    PhysicalField prod(g);
    const double* ux = pu.component(0);
    const double* uy = pu.component(1);
    const double* uz = pu.component(2);
    const double* wx = pw.component(0);
    const double* wy = pw.component(1);
    const double* wz = pw.component(2);
    double* px = prod.component(0);
    double* py = prod.component(1);
    double* pz = prod.component(2);
    kernels::par_for(vol, [&](std::size_t m) {
        px[m] = wy[m] * uz[m] - wz[m] * uy[m];
        py[m] = wz[m] * ux[m] - wx[m] * uz[m];
        pz[m] = wx[m] * uy[m] - wy[m] * ux[m];
    });
    SpectralField result = ft.from_physical(prod);
    dealias_inplace(result);
    leray_project_inplace(result);
    return result;
}

double trilinear(const SpectralField& u, const SpectralField& v, const SpectralField& w) {
    require_same_grid(u.grid(), w.grid());
    return inner(advective_term(u, v), w);
}

FluxDecomposition flux_decomposition(const SpectralField& u, Cutoff kappa) {
    const Grid& g = u.grid();
    const FourierTransform& ft = transforms_for(g);
    const CutoffDecomposition dec = split(u, kappa);

    const auto grad_low = gradient_samples(dec.low, ft);
    const PhysicalField phys_low = ft.to_physical(dec.low);
    const PhysicalField phys_high = ft.to_physical(dec.high);
    PhysicalField phys_u(g);
    {
        auto dst = phys_u.data();
        auto lo = phys_low.data();
        auto hi = phys_high.data();
        kernels::par_for(dst.size(), [&](std::size_t m) { dst[m] = lo[m] + hi[m]; });
    }

    const SpectralField b_high = assemble_advective(phys_high, grad_low, ft);
    const SpectralField b_low = assemble_advective(phys_low, grad_low, ft);
    const SpectralField b_full = assemble_advective(phys_u, grad_low, ft);

    FluxDecomposition out{kappa, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    out.t_hh = inner(b_high, dec.high);
    out.t_hl = inner(b_high, dec.low);
    out.t_lh = inner(b_low, dec.high);
    out.t_ll = inner(b_low, dec.low);
    out.total = inner(b_full, u);
    const double n56 = sobolev_norm(u, 5.0 / 6.0);
    out.majorant = n56 * n56 * n56;
    return out;
}

EstimateSample estimate_sample(const SpectralField& u, const SpectralField& v,
                               const SpectralField& w, SobolevExponent s1,
                               SobolevExponent s2, SobolevExponent s3) {
    EstimateSample sample{};
    sample.s1 = s1.s;
    sample.s2 = s2.s;
    sample.s3 = s3.s;
    sample.exponents_admissible = (s1.s + s2.s + s3.s >= 1.5);
    sample.lhs = std::abs(trilinear(u, v, w));
    sample.rhs_product = sobolev_norm(u, s1) * sobolev_norm(v, SobolevExponent{s2.s + 1.0}) *
                         sobolev_norm(w, s3);
    if (sample.rhs_product > 0.0) {
        sample.ratio = sample.lhs / sample.rhs_product;
    } else {
        const double scale = sobolev_norm(u, 1.0) * sobolev_norm(v, 1.0) * sobolev_norm(w, 1.0);
        if (sample.lhs > 1e-12 * std::max(scale, 1e-300) && scale > 0.0)
            throw std::logic_error("estimate_sample: zero bound against nonzero form");
        sample.ratio = 0.0;
    }
    return sample;
}

TriadBounds triad_bounds_check(const SpectralField& u, Cutoff kappa) {
    const FluxDecomposition flux = flux_decomposition(u, kappa);
    const CutoffDecomposition dec = split(u, kappa);
    const double low56 = sobolev_norm(dec.low, 5.0 / 6.0);
    const double high56 = sobolev_norm(dec.high, 5.0 / 6.0);

    auto ratio = [](double num, double den, const char* what) {
        if (den > 0.0) return std::abs(num) / den;
        if (std::abs(num) > 1e-12) throw std::logic_error(what);
        return 0.0;
    };
    TriadBounds out{};
    out.hh_ratio = ratio(flux.t_hh, high56 * high56 * low56,
                         "triad_bounds_check: hh term without high modes");
    out.lh_ratio = ratio(flux.t_lh, low56 * low56 * high56,
                         "triad_bounds_check: lh term without high modes");
    out.majorant_ratio = ratio(flux.t_hh, flux.majorant,
                               "triad_bounds_check: hh term on zero field");
    return out;
}

}  // namespace energylab
