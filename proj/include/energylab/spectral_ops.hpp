#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "energylab/field.hpp"
#include "energylab/grid.hpp"

namespace energylab {

// Fractional Stokes exponent s >= 0.
struct SobolevExponent {
    double s;
    explicit SobolevExponent(double value);
};

// Eigenvalue threshold for the low/high split; lambda <= kappa is "low".
struct Cutoff {
    double kappa;
    explicit Cutoff(double value);
};

struct CutoffDecomposition {
    SpectralField low;
    SpectralField high;
    Cutoff kappa;
};

struct InvariantReport {
    double hermitian_violation = 0.0;   // max |c(-k) - conj(c(k))|
    double divergence_violation = 0.0;  // max |k.c(k)|
    double mean_violation = 0.0;        // |c(0)|
    double support_violation = 0.0;     // max |c(k)| outside the dealias sphere
    double amplitude = 0.0;             // max |c(k)|
    bool ok(double tol) const;
};

InvariantReport check_invariants(const SpectralField& u);

// Projects onto divergence-free, mean-zero fields:
// c(k) <- c(k) - k (k.c(k)) / |k|^2, c(0) <- 0.
void leray_project_inplace(SpectralField& u);
SpectralField leray_project(const SpectralField& raw);

// Zeroes every mode with |k| > dealias_radius.
void dealias_inplace(SpectralField& u);

void scale_inplace(SpectralField& u, double a);
void add_scaled_inplace(SpectralField& u, const SpectralField& v, Complex a);

SpectralField curl(const SpectralField& u);

// L^2 inner product (real): (u,v) = (2pi)^3 sum_k Re(c_u(k) . conj(c_v(k))).
double inner(const SpectralField& u, const SpectralField& v);

// ||u||_s = ((2pi)^3 sum_k |k|^{2s} |c(k)|^2)^{1/2}; s = 0 is the L^2 norm
// and s = 1 the gradient norm |grad u|.
double sobolev_norm(const SpectralField& u, SobolevExponent s);
inline double sobolev_norm(const SpectralField& u, double s) {
    return sobolev_norm(u, SobolevExponent{s});
}

double l2_norm_sq(const SpectralField& u);

// Physical-space L^p norm of |u(x)| via collocation quadrature; p >= 1.
double lebesgue_norm(const SpectralField& u, double p);

CutoffDecomposition split(const SpectralField& u, Cutoff kappa);

// Sharp two-sided comparison of low/high norms across exponents
// (beta > alpha required):
//   low_gap  = kappa^{(beta-alpha)/2} ||u_low||_alpha  - ||u_low||_beta
//   high_gap = kappa^{(alpha-beta)/2} ||u_high||_beta - ||u_high||_alpha
// Both are >= 0 up to round-off.
std::pair<double, double> bernstein_gaps(const SpectralField& u, Cutoff kappa,
                                         SobolevExponent alpha, SobolevExponent beta);

// Divergence-free Gaussian field with shell-averaged energy ~ m^{-slope},
// supported inside the dealias sphere. Counter-based seeding: coefficients
// depend only on (seed, mode), never on traversal order or thread count.
SpectralField random_divfree_field(const Grid& grid, double spectrum_slope,
                                   std::uint64_t seed);

// Shell-binned energies E(m) = (2pi)^3 sum_{round(|k|)=m} |c(k)|^2,
// m = 1..dealias_radius.
std::vector<double> shell_spectrum(const SpectralField& u);

// Zero-pad u onto a finer grid (coarse modes copied verbatim).
SpectralField embed(const SpectralField& u, const Grid& fine);

namespace detail {
std::uint64_t splitmix64(std::uint64_t x);
}

}  // namespace energylab
