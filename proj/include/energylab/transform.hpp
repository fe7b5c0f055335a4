#pragma once

#include <memory>

#include "energylab/field.hpp"
#include "energylab/grid.hpp"

namespace energylab {

// FFT pair between Fourier-series coefficients and collocation samples.
//
// The 3D transform is composed of three single-axis passes; each pass runs
// one serial FFTW plan per slab, with slabs distributed over OpenMP threads.
// Every slab sees the same serial plan regardless of thread count, so the
// output is bit-identical for 1..N threads.
//
// Normalization: to_physical evaluates u(x_j) = sum_k c(k) e^{i k.x_j}
// (unscaled FFTW backward); from_physical divides by n^3. The pair is an
// identity on spectral data to round-off.
class FourierTransform {
public:
    explicit FourierTransform(const Grid& grid);
    ~FourierTransform();

    FourierTransform(const FourierTransform&) = delete;
    FourierTransform& operator=(const FourierTransform&) = delete;

    const Grid& grid() const noexcept { return grid_; }

    PhysicalField to_physical(const SpectralField& u) const;
    SpectralField from_physical(const PhysicalField& p) const;

    // In-place passes on a caller-provided full cube (3 components).
    void backward_cube(Complex* cube) const;  // spectral -> physical values
    void forward_cube(Complex* cube) const;   // physical values -> n^3 * spectral

private:
    struct Plans;
    Grid grid_;
    std::unique_ptr<Plans> plans_;
};

// Process-wide cache of per-grid transform objects.
const FourierTransform& transforms_for(const Grid& grid);

}  // namespace energylab
