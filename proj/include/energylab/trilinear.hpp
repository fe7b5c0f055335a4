#pragma once

#include "energylab/field.hpp"
#include "energylab/spectral_ops.hpp"

namespace energylab {

// b(u, P_kappa u, u) and its four triadic pieces. "total" is evaluated
// directly as trilinear(u, low, u); the terms come from separate advective
// products, so term-sum vs total is a genuine round-off check.
struct FluxDecomposition {
    Cutoff kappa;
    double total;     // b(u, u_low, u)
    double t_hh;      // b(u_high, u_low, u_high)
    double t_lh;      // b(u_low,  u_low, u_high)
    double t_hl;      // b(u_high, u_low, u_low)
    double t_ll;      // b(u_low,  u_low, u_low)
    double majorant;  // ||u||_{5/6}^3
};

struct EstimateSample {
    double s1, s2, s3;
    double lhs;           // |b(u,v,w)|
    double rhs_product;   // ||u||_{s1} ||v||_{s2+1} ||w||_{s3}
    double ratio;         // lhs / rhs_product (0 when rhs_product == 0)
    bool exponents_admissible;  // s1 + s2 + s3 >= 3/2
};

struct TriadBounds {
    double hh_ratio;        // |t_hh| / (||u_high||_{5/6}^2 ||u_low||_{5/6})
    double lh_ratio;        // |t_lh| / (||u_low||_{5/6}^2 ||u_high||_{5/6})
    double majorant_ratio;  // |t_hh| / ||u||_{5/6}^3
};

// Advective term B(u,v) = P(u . grad v), computed pseudo-spectrally in
// convective form with spherical 2/3-rule truncation before projection.
SpectralField advective_term(const SpectralField& u, const SpectralField& v);

// Rotational form P(curl(u) x u) of B(u,u); identical to the convective
// form after dealiasing up to round-off, and pointwise energy-neutral.
SpectralField rotational_advective(const SpectralField& u);

// b(u,v,w) = <B(u,v), w>.
double trilinear(const SpectralField& u, const SpectralField& v, const SpectralField& w);

FluxDecomposition flux_decomposition(const SpectralField& u, Cutoff kappa);

EstimateSample estimate_sample(const SpectralField& u, const SpectralField& v,
                               const SpectralField& w, SobolevExponent s1,
                               SobolevExponent s2, SobolevExponent s3);

TriadBounds triad_bounds_check(const SpectralField& u, Cutoff kappa);

}  // namespace energylab
