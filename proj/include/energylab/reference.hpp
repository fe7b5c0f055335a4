#pragma once

#include "energylab/field.hpp"
#include "energylab/spectral_ops.hpp"

// Serial reference implementations. Everything here is written as plain
// loops with no FFT, no OpenMP and no chunked reductions; the production
// kernels are tested and benchmarked against these.
namespace energylab::ref {

// Direct convolution sum over the dealias sphere:
// B(u,v)(k) = P_k [ i sum_{p+q=k} (c_u(p) . q) c_v(q) ].
SpectralField advective_term_convolution(const SpectralField& u, const SpectralField& v);

// <B(u,v), w> with B from the convolution sum.
double trilinear_convolution(const SpectralField& u, const SpectralField& v,
                             const SpectralField& w);

// Naive O(N^2) evaluation of u at the collocation points.
PhysicalField dft_to_physical(const SpectralField& u);

// Serial spectral norms and inner product.
double sobolev_norm(const SpectralField& u, double s);
double inner(const SpectralField& u, const SpectralField& v);

// Central-difference divergence of collocation samples, max over the grid.
double max_divergence_stencil(const PhysicalField& p);

// |grad u|^2 integral by spectral differentiation of each component and
// collocation quadrature of the squared samples.
double gradient_energy_quadrature(const SpectralField& u);

// Trapezoidal collocation sum of |u(x)|^2 over the box.
double l2_quadrature(const PhysicalField& p);

void leray_project_inplace(SpectralField& u);

}  // namespace energylab::ref
