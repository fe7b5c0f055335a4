#include "energylab/transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "energylab/kernels.hpp"

namespace energylab {

namespace {

std::mutex g_plan_mutex;  // FFTW planning is not thread-safe

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

struct FourierTransform::Plans {
    // One plan per axis and direction, executed per slab via the new-array
    // interface. Planned FFTW_UNALIGNED so any slab base address is valid.
    fftw_plan z_fwd{}, z_bwd{};  // stride 1,   dist n,   slab = fixed ix
    fftw_plan y_fwd{}, y_bwd{};  // stride n,   dist 1,   slab = fixed ix
    fftw_plan x_fwd{}, x_bwd{};  // stride n^2, dist 1,   slab = fixed iy

    ~Plans() {
        for (fftw_plan p : {z_fwd, z_bwd, y_fwd, y_bwd, x_fwd, x_bwd})
            if (p != nullptr) fftw_destroy_plan(p);
    }
};

FourierTransform::FourierTransform(const Grid& grid)
    : grid_(grid), plans_(std::make_unique<Plans>()) {
    const int n = grid_.n();
    const int n2 = n * n;
    std::vector<Complex> scratch(grid_.volume());
    fftw_complex* s = as_fftw(scratch.data());

    std::lock_guard<std::mutex> lock(g_plan_mutex);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    auto plan = [&](int stride, int dist, int sign) {
        return fftw_plan_many_dft(1, &n, n, s, nullptr, stride, dist, s, nullptr,
                                  stride, dist, sign, flags);
    };
    plans_->z_fwd = plan(1, n, FFTW_FORWARD);
    plans_->z_bwd = plan(1, n, FFTW_BACKWARD);
    plans_->y_fwd = plan(n, 1, FFTW_FORWARD);
    plans_->y_bwd = plan(n, 1, FFTW_BACKWARD);
    plans_->x_fwd = plan(n2, 1, FFTW_FORWARD);
    plans_->x_bwd = plan(n2, 1, FFTW_BACKWARD);
}

FourierTransform::~FourierTransform() = default;

namespace {

// Execute one axis pass over a single component cube: n slabs, each a batch
// of n length-n transforms.
void run_pass(fftw_plan plan, Complex* base, int n, std::size_t slab_stride) {
    kernels::par_for(static_cast<std::size_t>(n), [&](std::size_t s) {
        fftw_complex* ptr = reinterpret_cast<fftw_complex*>(base + s * slab_stride);
        fftw_execute_dft(plan, ptr, ptr);
    });
}

}  // namespace

void FourierTransform::backward_cube(Complex* cube) const {
    const int n = grid_.n();
    const std::size_t n2 = static_cast<std::size_t>(n) * n;
    run_pass(plans_->z_bwd, cube, n, n2);                      // z: slab = ix
    run_pass(plans_->y_bwd, cube, n, n2);                      // y: slab = ix
    run_pass(plans_->x_bwd, cube, n, static_cast<std::size_t>(n));  // x: slab = iy
}

void FourierTransform::forward_cube(Complex* cube) const {
    const int n = grid_.n();
    const std::size_t n2 = static_cast<std::size_t>(n) * n;
    run_pass(plans_->z_fwd, cube, n, n2);
    run_pass(plans_->y_fwd, cube, n, n2);
    run_pass(plans_->x_fwd, cube, n, static_cast<std::size_t>(n));
}

PhysicalField FourierTransform::to_physical(const SpectralField& u) const {
    require_same_grid(grid_, u.grid());
    PhysicalField out(grid_);
    const std::size_t vol = grid_.volume();
    std::vector<Complex> work(vol);
    for (int c = 0; c < 3; ++c) {
        const Complex* src = u.component(c);
        std::copy(src, src + vol, work.data());
        backward_cube(work.data());
        double* dst = out.component(c);
        kernels::par_for(vol, [&](std::size_t i) { dst[i] = work[i].real(); });
    }
    return out;
}

SpectralField FourierTransform::from_physical(const PhysicalField& p) const {
    require_same_grid(grid_, p.grid());
    SpectralField out(grid_);
    const std::size_t vol = grid_.volume();
    const double scale = 1.0 / static_cast<double>(vol);
    std::vector<Complex> work(vol);
    for (int c = 0; c < 3; ++c) {
        const double* src = p.component(c);
        kernels::par_for(vol, [&](std::size_t i) { work[i] = Complex{src[i], 0.0}; });
        forward_cube(work.data());
        Complex* dst = out.component(c);
        kernels::par_for(vol, [&](std::size_t i) { dst[i] = work[i] * scale; });
    }
    return out;
}

const FourierTransform& transforms_for(const Grid& grid) {
    static std::mutex cache_mutex;
    static std::map<int, std::unique_ptr<FourierTransform>> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(grid.n());
    if (it == cache.end())
        it = cache.emplace(grid.n(), std::make_unique<FourierTransform>(grid)).first;
    return *it->second;
}

}  // namespace energylab
