#pragma once

namespace energylab::regression {

// Empirical constants for the trilinear Sobolev estimate
// |b(u,v,w)| <= C ||u||_{s1} ||v||_{s2+1} ||w||_{s3}
// in this library's normalization (norms carry the (2pi)^3 box volume).
//
// Measured over: 100 random divergence-free triples on 16^3 for several
// seed bases; cutoff-structured triples (u_high, u_low, u_high) and
// (u_low, u_low, u_high) on 32^3, 20 seeds, kappa in {4,16,64}; and the
// Taylor-Green 32^3 trajectory snapshots (nu=0.05, T=2) over the same
// ladder. Locked at the observed maxima with ~2x headroom; `check --suite
// estimates` re-measures and fails if any ratio exceeds them.

// (s1,s2,s3) = (1/2,1/2,1/2). Observed max 1.29e-3 (random triples);
// structured hh triads observed <= 6.8e-4.
inline constexpr double c1_half_half_half = 3e-3;

// (s1,s2,s3) = (5/6,0,2/3). Bounds the lh triad ratio and the per-sample
// flux majorant |b(u_high, u_low, u_high)| <= C ||u||_{5/6}^3. Observed
// max 5.4e-3 (Taylor-Green lh triads); majorant ratios observed <= 1.3e-4.
inline constexpr double c2_flux_majorant = 1e-2;

}  // namespace energylab::regression
