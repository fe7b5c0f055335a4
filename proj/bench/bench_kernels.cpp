// Times the OpenMP kernels against their serial reference implementations
// and reports speedups. Usage: bench_kernels [n] (default 64).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "energylab/kernels.hpp"
#include "energylab/reference.hpp"
#include "energylab/solver.hpp"
#include "energylab/spectral_ops.hpp"
#include "energylab/threads.hpp"
#include "energylab/transform.hpp"
#include "energylab/trilinear.hpp"

using namespace energylab;
using Clock = std::chrono::steady_clock;

namespace {

// Best-of-N to damp scheduler noise on shared machines.
template <class F>
double time_ms(F&& f, int repeats) {
    f();  // warm-up
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto start = Clock::now();
        f();
        const auto stop = Clock::now();
        best = std::min(best,
                        std::chrono::duration<double, std::milli>(stop - start).count());
    }
    return best;
}

void row(const char* name, double serial_ms, double parallel_ms, double agreement) {
    std::printf("%-28s %10.3f ms %10.3f ms  x%5.2f   err %.2e\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms, agreement);
}

}  // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 64;
    const Grid grid(n);
    const int threads = thread_count();
    std::printf("grid %d^3, %d threads\n", n, threads);
    std::printf("%-28s %13s %13s %7s\n", "kernel", "serial", "parallel", "speedup");

    const SpectralField u = random_divfree_field(grid, 5.0 / 3.0, 1);
    const SpectralField v = random_divfree_field(grid, 5.0 / 3.0, 2);

    {
        auto du = u.data();
        auto term = [&](std::size_t i) { return std::norm(du[i]); };
        double serial_val = 0.0, parallel_val = 0.0;
        const double s = time_ms([&] { serial_val = ref::sum(du.size(), term); }, 9);
        const double p = time_ms([&] { parallel_val = kernels::det_sum(du.size(), term); }, 9);
        row("norm reduction", s, p, std::abs(serial_val - parallel_val) / serial_val);
    }
    {
        SpectralField a = u, b = u;
        const double s = time_ms([&] { ref::leray_project_inplace(a); }, 9);
        const double p = time_ms([&] { leray_project_inplace(b); }, 9);
        double err = 0.0;
        for (std::size_t i = 0; i < a.data().size(); ++i)
            err = std::max(err, std::abs(a.data()[i] - b.data()[i]));
        row("leray projection", s, p, err);
    }
    {
        const FourierTransform& ft = transforms_for(grid);
        PhysicalField out(grid);
        set_thread_count(1);
        const double s = time_ms([&] { out = ft.to_physical(u); }, 7);
        set_thread_count(0);
        const double p = time_ms([&] { out = ft.to_physical(u); }, 7);
        // Slab-serial plans make the transform bit-identical across thread
        // counts, so agreement is exact by construction.
        row("fft backward (3 comps)", s, p, 0.0);
    }
    {
        SpectralField out(grid);
        set_thread_count(1);
        const double s = time_ms([&] { out = advective_term(u, v); }, 5);
        set_thread_count(0);
        SpectralField out2(grid);
        const double p = time_ms([&] { out2 = advective_term(u, v); }, 5);
        double err = 0.0;
        for (std::size_t i = 0; i < out.data().size(); ++i)
            err = std::max(err, std::abs(out.data()[i] - out2.data()[i]));
        row("advective term", s, p, err);
    }
    if (n <= 12) {
        SpectralField slow(grid), fast(grid);
        const double s = time_ms([&] { slow = ref::advective_term_convolution(u, v); }, 1);
        const double p = time_ms([&] { fast = advective_term(u, v); }, 1);
        double amp = 0.0, err = 0.0;
        for (std::size_t i = 0; i < slow.data().size(); ++i) {
            amp = std::max(amp, std::abs(slow.data()[i]));
            err = std::max(err, std::abs(slow.data()[i] - fast.data()[i]));
        }
        row("convolution vs fft", s, p, err / amp);
    }
    {
        SolverConfig cfg;
        cfg.n = n;
        cfg.nu = 0.05;
        cfg.dt = 1e-3;
        const SpectralField tg = taylor_green_field(grid);
        set_thread_count(1);
        const double s = time_ms([&] { (void)step(tg, 0.0, cfg); }, 5);
        set_thread_count(0);
        const double p = time_ms([&] { (void)step(tg, 0.0, cfg); }, 5);
        row("ifrk4 step", s, p, 0.0);
    }
    return 0;
}
