#include <doctest.h>

#include <cmath>

#include "energylab/reference.hpp"
#include "energylab/solver.hpp"
#include "energylab/spectral_ops.hpp"
#include "energylab/trilinear.hpp"

using namespace energylab;

namespace {

double norm_scale(const SpectralField& u, const SpectralField& v, const SpectralField& w) {
    return sobolev_norm(u, 0.0) * sobolev_norm(v, 1.0) * sobolev_norm(w, 0.0);
}

}  // namespace

TEST_CASE("advective term of a constant field vanishes") {
    const Grid grid(8);
    const SpectralField u = random_divfree_field(grid, 5.0 / 3.0, 3);
    const SpectralField zero(grid);  // only the (excluded) zero mode
    const SpectralField b = advective_term(u, zero);
    CHECK(l2_norm_sq(b) == 0.0);
}

TEST_CASE("Beltrami self-advection projects to zero") {
    const Grid grid(16);
    const SpectralField u = beltrami_field(grid, 1.0, 1.0, 1.0);
    const double scale = std::sqrt(l2_norm_sq(u));
    CHECK(std::sqrt(l2_norm_sq(advective_term(u, u))) <= 1e-13 * scale);
    CHECK(std::sqrt(l2_norm_sq(rotational_advective(u))) <= 1e-15 * scale);
}

TEST_CASE("advective term matches convolution oracle on 8^3") {
    const Grid grid(8);
    const SpectralField u = random_divfree_field(grid, 1.2, 101);
    const SpectralField v = random_divfree_field(grid, 1.2, 102);
    const SpectralField fast = advective_term(u, v);
    const SpectralField slow = ref::advective_term_convolution(u, v);
    double amp = 0.0, worst = 0.0;
    for (std::size_t i = 0; i < fast.data().size(); ++i) {
        amp = std::max(amp, std::abs(slow.data()[i]));
        worst = std::max(worst, std::abs(fast.data()[i] - slow.data()[i]));
    }
    CHECK(worst <= 1e-11 * amp);
}

TEST_CASE("rotational and convective forms agree after projection") {
    const Grid grid(16);
    const SpectralField u = random_divfree_field(grid, 5.0 / 3.0, 103);
    const SpectralField a = advective_term(u, u);
    const SpectralField b = rotational_advective(u);
    double amp = 0.0, worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        amp = std::max(amp, std::abs(a.data()[i]));
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    }
    CHECK(worst <= 1e-12 * amp);
}

TEST_CASE("trilinear form: antisymmetry and energy neutrality") {
    const Grid grid(16);
    for (int trial = 0; trial < 5; ++trial) {
        const auto s = static_cast<std::uint64_t>(200 + 3 * trial);
        const SpectralField u = random_divfree_field(grid, 5.0 / 3.0, s);
        const SpectralField v = random_divfree_field(grid, 5.0 / 3.0, s + 1);
        const SpectralField w = random_divfree_field(grid, 5.0 / 3.0, s + 2);
        const double scale = norm_scale(u, v, w);
        CHECK(std::abs(trilinear(u, v, w) + trilinear(u, w, v)) <= 1e-12 * scale);
        CHECK(std::abs(trilinear(u, v, v)) <= 1e-12 * norm_scale(u, v, v));
        CHECK(std::abs(trilinear(u, u, u)) <= 1e-12 * std::pow(sobolev_norm(u, 1.0), 3));
    }
}

TEST_CASE("trilinear matches convolution oracle") {
    const Grid grid(8);
    for (int trial = 0; trial < 3; ++trial) {
        const auto s = static_cast<std::uint64_t>(300 + 3 * trial);
        const SpectralField u = random_divfree_field(grid, 1.0, s);
        const SpectralField v = random_divfree_field(grid, 1.0, s + 1);
        const SpectralField w = random_divfree_field(grid, 1.0, s + 2);
        const double fast = trilinear(u, v, w);
        const double slow = ref::trilinear_convolution(u, v, w);
        CHECK(std::abs(fast - slow) <= 1e-11 * std::max(std::abs(slow), norm_scale(u, v, w)));
    }
}

TEST_CASE("trilinear is bilinear in each slot") {
    const Grid grid(8);
    const SpectralField u = random_divfree_field(grid, 1.0, 400);
    const SpectralField u2 = random_divfree_field(grid, 1.0, 401);
    const SpectralField v = random_divfree_field(grid, 1.0, 402);
    const SpectralField w = random_divfree_field(grid, 1.0, 403);

    SpectralField combo = u;
    scale_inplace(combo, 2.0);
    add_scaled_inplace(combo, u2, Complex{-0.5, 0.0});
    const double lhs = trilinear(combo, v, w);
    const double rhs = 2.0 * trilinear(u, v, w) - 0.5 * trilinear(u2, v, w);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(std::abs(rhs), norm_scale(combo, v, w)));

    SpectralField vcombo = v;
    scale_inplace(vcombo, -1.5);
    add_scaled_inplace(vcombo, u2, Complex{0.25, 0.0});
    const double lhs2 = trilinear(u, vcombo, w);
    const double rhs2 = -1.5 * trilinear(u, v, w) + 0.25 * trilinear(u, u2, w);
    CHECK(std::abs(lhs2 - rhs2) <= 1e-12 * std::max(std::abs(rhs2), norm_scale(u, vcombo, w)));
}

TEST_CASE("grid mismatch is rejected") {
    const SpectralField a = random_divfree_field(Grid(8), 1.0, 1);
    const SpectralField b = random_divfree_field(Grid(16), 1.0, 1);
    CHECK_THROWS_AS(advective_term(a, b), std::invalid_argument);
    CHECK_THROWS_AS(trilinear(a, b, a), std::invalid_argument);
}

TEST_CASE("flux decomposition: four terms, vanishing pair, oracle") {
    const Grid grid(16);
    const SpectralField u = random_divfree_field(grid, 5.0 / 3.0, 500);

    for (double kappa : {4.0, 16.0}) {
        const FluxDecomposition d = flux_decomposition(u, Cutoff(kappa));
        CHECK(std::abs(d.total - (d.t_hh + d.t_lh + d.t_hl + d.t_ll)) <= 1e-12 * d.majorant);
        CHECK(std::abs(d.t_hl) <= 1e-12 * d.majorant);
        CHECK(std::abs(d.t_ll) <= 1e-12 * d.majorant);
        const CutoffDecomposition dec = split(u, Cutoff(kappa));
        CHECK(d.total ==
              doctest::Approx(trilinear(u, dec.low, u)).epsilon(1e-10).scale(d.majorant));
    }

    // Full cutoff: everything collapses to b(u,u,u) = 0.
    const FluxDecomposition full = flux_decomposition(u, Cutoff(grid.lambda_max()));
    CHECK(std::abs(full.total) <= 1e-12 * full.majorant);
    CHECK(std::abs(full.t_hh) <= 1e-12 * full.majorant);
    CHECK(std::abs(full.t_lh) <= 1e-12 * full.majorant);

    // Triads against the convolution oracle on 8^3.
    const Grid g8(8);
    const SpectralField u8 = random_divfree_field(g8, 1.0, 501);
    const CutoffDecomposition dec8 = split(u8, Cutoff(2.0));
    const FluxDecomposition d8 = flux_decomposition(u8, Cutoff(2.0));
    const double tol = 1e-11 * std::max(d8.majorant, 1e-30);
    CHECK(std::abs(d8.t_hh - ref::trilinear_convolution(dec8.high, dec8.low, dec8.high)) <= tol);
    CHECK(std::abs(d8.t_lh - ref::trilinear_convolution(dec8.low, dec8.low, dec8.high)) <= tol);
    CHECK(std::abs(d8.t_hl - ref::trilinear_convolution(dec8.high, dec8.low, dec8.low)) <= tol);
    CHECK(std::abs(d8.t_ll - ref::trilinear_convolution(dec8.low, dec8.low, dec8.low)) <= tol);
    CHECK(std::abs(d8.total - ref::trilinear_convolution(u8, dec8.low, u8)) <= tol);
}

TEST_CASE("estimate samples") {
    const Grid grid(16);
    const SpectralField u = random_divfree_field(grid, 5.0 / 3.0, 600);
    const SpectralField v = random_divfree_field(grid, 5.0 / 3.0, 601);

    const EstimateSample half = estimate_sample(u, v, u, SobolevExponent(0.5),
                                                SobolevExponent(0.5), SobolevExponent(0.5));
    CHECK(half.exponents_admissible);
    CHECK(half.rhs_product > 0.0);
    CHECK(half.ratio == half.lhs / half.rhs_product);

    const EstimateSample degenerate = estimate_sample(u, v, v, SobolevExponent(0.5),
                                                      SobolevExponent(0.5), SobolevExponent(0.5));
    CHECK(degenerate.lhs <= 1e-12 * degenerate.rhs_product);

    const EstimateSample below = estimate_sample(u, v, u, SobolevExponent(0.25),
                                                 SobolevExponent(0.25), SobolevExponent(0.25));
    CHECK(!below.exponents_admissible);
}

TEST_CASE("triad bounds: full cutoff numerators vanish") {
    const Grid grid(16);
    const SpectralField u = random_divfree_field(grid, 5.0 / 3.0, 700);
    const FluxDecomposition d = flux_decomposition(u, Cutoff(grid.lambda_max()));
    CHECK(std::abs(d.t_hh) <= 1e-12 * d.majorant);
    CHECK(std::abs(d.t_lh) <= 1e-12 * d.majorant);
    const TriadBounds b = triad_bounds_check(u, Cutoff(4.0));
    CHECK(std::isfinite(b.hh_ratio));
    CHECK(std::isfinite(b.lh_ratio));
    CHECK(std::isfinite(b.majorant_ratio));
}

TEST_CASE("hh flux numerator fades as kappa approaches lambda_max") {
    const Grid grid(16);
    const SpectralField u = random_divfree_field(grid, 5.0 / 3.0, 800);
    double prev = std::abs(flux_decomposition(u, Cutoff(1.0)).t_hh);
    const double top = std::abs(flux_decomposition(u, Cutoff(grid.lambda_max())).t_hh);
    CHECK(top <= 1e-12 * flux_decomposition(u, Cutoff(1.0)).majorant);
    CHECK(top <= prev);
}
