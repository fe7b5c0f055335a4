#include <doctest.h>

#include <cmath>

#include "energylab/solver.hpp"
#include "energylab/spectral_ops.hpp"
#include "energylab/threads.hpp"

using namespace energylab;

TEST_CASE("beltrami field: eigenrelation and energy") {
    const Grid grid(16);
    const SpectralField u = beltrami_field(grid, 1.0, 1.0, 1.0);
    const SpectralField w = curl(u);
    double worst = 0.0;
    for (std::size_t i = 0; i < u.data().size(); ++i)
        worst = std::max(worst, std::abs(w.data()[i] - u.data()[i]));
    CHECK(worst <= 1e-13);
    CHECK(check_invariants(u).ok(1e-14));

    // Hand mode count: 12 coefficients of modulus 1/2.
    const double vol = two_pi * two_pi * two_pi;
    CHECK(l2_norm_sq(u) == doctest::Approx(3.0 * vol).epsilon(1e-13));
    const SpectralField u2 = beltrami_field(grid, 0.5, 0.25, 2.0);
    CHECK(l2_norm_sq(u2) ==
          doctest::Approx((0.25 + 0.0625 + 4.0) * vol).epsilon(1e-13));
}

TEST_CASE("taylor-green field: support and energy") {
    const Grid grid(32);
    const SpectralField u = taylor_green_field(grid);
    CHECK(check_invariants(u).divergence_violation <= 1e-14);
    CHECK(check_invariants(u).ok(1e-14));

    // Only |k|^2 = 3 is populated.
    for (std::size_t i = 0; i < grid.volume(); ++i) {
        const auto k = grid.wavevector(i);
        const int l = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        if (l == 3) continue;
        CHECK(std::abs(u.component(0)[i]) == 0.0);
        CHECK(std::abs(u.component(1)[i]) == 0.0);
        CHECK(std::abs(u.component(2)[i]) == 0.0);
    }
    const double vol = two_pi * two_pi * two_pi;
    CHECK(l2_norm_sq(u) == doctest::Approx(vol / 4.0).epsilon(1e-13));
}

TEST_CASE("step: zero field stays zero") {
    SolverConfig cfg;
    cfg.n = 8;
    cfg.nu = 0.1;
    cfg.dt = 0.01;
    const SpectralField zero{Grid(8)};
    const SpectralField out = step(zero, 0.0, cfg);
    CHECK(l2_norm_sq(out) == 0.0);
}

TEST_CASE("step: exact viscous factor on a single mode") {
    // Stokes flow: for a lone mode the nonlinear term vanishes identically,
    // so one step multiplies the amplitude by exactly e^{-nu lambda dt}.
    SolverConfig cfg;
    cfg.n = 8;
    cfg.nu = 0.1;
    cfg.dt = 0.01;
    const Grid grid(8);
    SpectralField u(grid);
    u.mode(1, 1, 0, 0) = 0.5;
    u.mode(1, -1, 0, 0) = 0.5;
    const SpectralField out = step(u, 0.0, cfg);
    const double expected = 0.5 * std::exp(-0.001);
    CHECK(out.mode(1, 1, 0, 0).real() == doctest::Approx(expected).epsilon(1e-15));
    CHECK(out.mode(1, 1, 0, 0).imag() == 0.0);
}

TEST_CASE("beltrami decay is exact") {
    SolverConfig cfg;
    cfg.n = 16;
    cfg.nu = 0.1;
    cfg.dt = 1e-2;
    cfg.t_end = 0.5;
    cfg.initial.kind = InitialSpec::Kind::beltrami;
    const Trajectory traj = simulate(cfg);
    const double e0 = traj.budget().front().energy_sq;
    const double eT = traj.budget().back().energy_sq;
    CHECK(std::abs(eT - e0 * std::exp(-2.0 * cfg.nu * cfg.t_end)) <= 1e-10 * e0);
}

TEST_CASE("stokes flow energies match the heat semigroup") {
    // Low-amplitude field: nonlinear contribution is negligible relative to
    // the viscous decay, which the integrating factor applies exactly.
    SolverConfig cfg;
    cfg.n = 16;
    cfg.nu = 0.2;
    cfg.dt = 5e-3;
    cfg.t_end = 0.25;
    cfg.initial.kind = InitialSpec::Kind::random;
    cfg.initial.amplitude = 1e-6;
    cfg.initial.seed = 9;
    const Trajectory traj = simulate(cfg);

    const Grid grid(cfg.n);
    SpectralField u0 = random_divfree_field(grid, 5.0 / 3.0, 9);
    const double norm = std::sqrt(l2_norm_sq(u0));
    scale_inplace(u0, cfg.initial.amplitude / norm);

    const double vol = two_pi * two_pi * two_pi;
    double expected = 0.0;
    for (std::size_t i = 0; i < grid.volume(); ++i) {
        const auto k = grid.wavevector(i);
        const double l = double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
        const double decay = std::exp(-2.0 * cfg.nu * l * cfg.t_end);
        expected += vol * decay *
                    (std::norm(u0.component(0)[i]) + std::norm(u0.component(1)[i]) +
                     std::norm(u0.component(2)[i]));
    }
    const double eT = traj.budget().back().energy_sq;
    CHECK(std::abs(eT - expected) <= 1e-9 * expected);
}

TEST_CASE("inviscid unforced: energy drift at O(dt^4)") {
    SolverConfig cfg;
    cfg.n = 16;
    cfg.nu = 0.0;
    cfg.dt = 1e-2;
    cfg.t_end = 1.0;  // 100 steps
    cfg.initial.kind = InitialSpec::Kind::random;
    cfg.initial.seed = 4;
    const Trajectory traj = simulate(cfg);
    const double e0 = traj.budget().front().energy_sq;
    const double drift = std::abs(traj.budget().back().energy_sq - e0);
    CHECK(drift <= 100.0 * std::pow(cfg.dt, 4) * e0);
}

TEST_CASE("decaying turbulence: energy nonincreasing") {
    SolverConfig cfg;
    cfg.n = 32;
    cfg.nu = 0.02;
    cfg.dt = 2e-3;
    cfg.t_end = 0.1;
    cfg.initial.kind = InitialSpec::Kind::random;
    cfg.initial.seed = 12;
    const Trajectory traj = simulate(cfg);
    for (std::size_t i = 1; i < traj.budget().size(); ++i)
        CHECK(traj.budget()[i].energy_sq <= traj.budget()[i - 1].energy_sq * (1.0 + 1e-12));
}

TEST_CASE("simulate: t_end = 0 gives a single snapshot") {
    SolverConfig cfg;
    cfg.n = 8;
    cfg.t_end = 0.0;
    cfg.initial.kind = InitialSpec::Kind::taylor_green;
    const Trajectory traj = simulate(cfg);
    CHECK(traj.snapshot_count() == 1);
    CHECK(traj.budget().size() == 1);
    CHECK(traj.snapshot(0) == taylor_green_field(Grid(8)));
}

TEST_CASE("simulate is deterministic and thread-count independent") {
    SolverConfig cfg;
    cfg.n = 16;
    cfg.nu = 0.05;
    cfg.dt = 5e-3;
    cfg.t_end = 0.05;
    cfg.initial.kind = InitialSpec::Kind::random;
    cfg.initial.seed = 31;

    const Trajectory a = simulate(cfg);
    const Trajectory b = simulate(cfg);
    CHECK(a.snapshot(a.snapshot_count() - 1) == b.snapshot(b.snapshot_count() - 1));

    set_thread_count(1);
    const Trajectory c = simulate(cfg);
    set_thread_count(2);
    const Trajectory d = simulate(cfg);
    set_thread_count(0);
    CHECK(c.snapshot(c.snapshot_count() - 1) == d.snapshot(d.snapshot_count() - 1));
}

TEST_CASE("divergence-free and mean-zero are preserved") {
    SolverConfig cfg;
    cfg.n = 16;
    cfg.nu = 0.01;
    cfg.dt = 5e-3;
    cfg.t_end = 0.1;
    cfg.initial.kind = InitialSpec::Kind::random;
    cfg.initial.seed = 77;
    const Trajectory traj = simulate(cfg);
    const SpectralField last = traj.snapshot(traj.snapshot_count() - 1);
    const InvariantReport rep = check_invariants(last);
    CHECK(rep.ok(1e-13));
}

TEST_CASE("CFL violation is reported") {
    SolverConfig cfg;
    cfg.n = 16;
    cfg.nu = 0.01;
    cfg.dt = 10.0;  // far beyond any advective limit
    cfg.t_end = 20.0;
    cfg.initial.kind = InitialSpec::Kind::beltrami;
    CHECK_THROWS_AS(simulate(cfg), CflViolation);
}

TEST_CASE("non-finite state aborts with a diagnostic") {
    SolverConfig cfg;
    cfg.n = 8;
    cfg.nu = 0.01;
    cfg.dt = 1e-3;
    cfg.t_end = 0.01;
    SpectralField poisoned = beltrami_field(Grid(8), 1, 1, 1);
    poisoned.mode(0, 0, 0, 1) *= std::nan("1");
    poisoned.mode(0, 0, 0, -1) *= std::nan("1");
    CHECK_THROWS_AS(simulate(cfg, poisoned), SolverError);
}

TEST_CASE("config validation") {
    SolverConfig cfg;
    cfg.n = 7;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg.n = 16;
    cfg.dt = -1.0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg.dt = 1e-3;
    cfg.budget_stride = 3;
    cfg.snapshot_stride = 10;  // not a multiple
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg.budget_stride = 2;
    CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("budget and snapshot strides") {
    SolverConfig cfg;
    cfg.n = 8;
    cfg.nu = 0.1;
    cfg.dt = 1e-2;
    cfg.t_end = 0.1;  // 10 steps
    cfg.budget_stride = 2;
    cfg.snapshot_stride = 4;
    cfg.initial.kind = InitialSpec::Kind::beltrami;
    const Trajectory traj = simulate(cfg);
    CHECK(traj.budget().size() == 6);        // steps 0,2,4,6,8,10
    CHECK(traj.snapshot_count() == 4);       // steps 0,4,8,10 (final forced)
    CHECK(traj.snapshot_time(0) == 0.0);
    CHECK(traj.snapshot_time(3) == doctest::Approx(0.1));
}
