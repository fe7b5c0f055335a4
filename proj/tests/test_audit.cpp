#include <doctest.h>

#include <cmath>

#include "energylab/audit.hpp"
#include "energylab/solver.hpp"
#include "energylab/spectral_ops.hpp"

using namespace energylab;

namespace {

Trajectory beltrami_run(int n, double nu, double dt, double t_end, int snapshot_stride = 10) {
    SolverConfig cfg;
    cfg.n = n;
    cfg.nu = nu;
    cfg.dt = dt;
    cfg.t_end = t_end;
    cfg.snapshot_stride = snapshot_stride;
    cfg.initial.kind = InitialSpec::Kind::beltrami;
    return simulate(cfg);
}

}  // namespace

TEST_CASE("ee defect: degenerate window is exactly zero") {
    const Trajectory traj = beltrami_run(16, 0.1, 1e-2, 0.2);
    CHECK(ee_defect(traj, 0.1, 0.1) == 0.0);
    CHECK(sei_margin(traj, 0.1, 0.1) == 0.0);
}

TEST_CASE("ee defect: stokes decay closes the budget") {
    // Tiny amplitude turns the dynamics into pure heat decay; low shells
    // keep the trapezoid error of the dissipation integral below 1e-9.
    SolverConfig cfg;
    cfg.n = 16;
    cfg.nu = 0.02;
    cfg.dt = 1e-3;
    cfg.t_end = 0.2;
    cfg.initial.kind = InitialSpec::Kind::random;
    const Grid grid(cfg.n);
    SpectralField u0 = split(random_divfree_field(grid, 5.0 / 3.0, 2), Cutoff(4.0)).low;
    scale_inplace(u0, 1e-6 / std::sqrt(l2_norm_sq(u0)));
    const Trajectory traj = simulate(cfg, u0);
    const double e0 = traj.budget().front().energy_sq;
    CHECK(std::abs(ee_defect(traj, 0.0, cfg.t_end)) <= 1e-9 * e0);
}

TEST_CASE("ee defect: resolved beltrami run") {
    const Trajectory traj = beltrami_run(16, 0.1, 1e-3, 0.5);
    const double e0 = traj.budget().front().energy_sq;
    CHECK(std::abs(ee_defect(traj, 0.0, 0.5)) <= 1e-8 * e0);
    CHECK(sei_margin(traj, 0.0, 0.5) >= -1e-8 * e0);
    // All sampled start times, standing in for the a.e.-t0 clause.
    CHECK(min_sei_margin(traj) >= -1e-8 * e0);
    CHECK(min_sei_margin(traj) <= sei_margin(traj, 0.0, 0.5) + 1e-13 * e0);
}

TEST_CASE("ee defect is additive over adjacent windows") {
    const Trajectory traj = beltrami_run(16, 0.1, 1e-2, 0.3);
    const double whole = ee_defect(traj, 0.0, 0.3);
    const double pieces = ee_defect(traj, 0.0, 0.1) + ee_defect(traj, 0.1, 0.3);
    const double e0 = traj.budget().front().energy_sq;
    CHECK(std::abs(whole - pieces) <= 1e-13 * e0);
}

TEST_CASE("ee defect rejects out-of-span windows") {
    const Trajectory traj = beltrami_run(8, 0.1, 1e-2, 0.1);
    CHECK_THROWS_AS(ee_defect(traj, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ee_defect(traj, -0.5, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(ee_defect(traj, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("lemma defect equals ee defect at full cutoff") {
    SolverConfig cfg;
    cfg.n = 16;
    cfg.nu = 0.05;
    cfg.dt = 5e-3;
    cfg.t_end = 0.2;
    cfg.snapshot_stride = 10;
    cfg.initial.kind = InitialSpec::Kind::taylor_green;
    const Trajectory traj = simulate(cfg);
    const double scale = std::max(traj.budget().front().energy_sq, 1.0);
    const double ee = ee_defect(traj, 0.0, 0.2);
    const double lemma = lemma_defect(traj, 0.0, 0.2, traj.grid().lambda_max());
    CHECK(std::abs(lemma - ee) <= 1e-12 * scale);
}

TEST_CASE("lemma defect on beltrami: flux-free at any cutoff") {
    const Trajectory traj = beltrami_run(16, 0.1, 5e-3, 0.2, 5);
    const double e0 = traj.budget().front().energy_sq;
    for (double kappa : {1.0, 2.0, 4.0}) {
        const double lemma = lemma_defect(traj, 0.0, 0.2, kappa);
        const double ee = ee_defect(traj, 0.0, 0.2);
        CHECK(std::abs(lemma - ee) <= 1e-12 * e0);
    }
}

TEST_CASE("flux convergence ladder on a taylor-green run") {
    SolverConfig cfg;
    cfg.n = 16;
    cfg.nu = 0.1;
    cfg.dt = 5e-3;
    cfg.t_end = 0.5;
    cfg.snapshot_stride = 10;
    cfg.initial.kind = InitialSpec::Kind::taylor_green;
    const Trajectory traj = simulate(cfg);

    const double lmax = traj.grid().lambda_max();
    const DefectReport rep = flux_convergence(traj, {1.0, 4.0, 9.0, 16.0, lmax});
    REQUIRE(rep.rows.size() == 5);
    CHECK(rep.majorant_ok);

    const double e0 = traj.budget().front().energy_sq;
    // |lemma_defect| shrinks from the bottom rung to the top rung, where the
    // flux term vanishes identically.
    CHECK(std::abs(rep.rows.back().lemma) <=
          std::abs(rep.rows.front().lemma) + 1e-12 * e0);
    CHECK(rep.rows.back().flux_integral <= 1e-11 * e0);
    CHECK(rep.rows.back().hh_integral <= 1e-11 * e0);
    CHECK(rep.rows.back().lh_integral <= 1e-11 * e0);

    CHECK_THROWS_AS(flux_convergence(traj, {}), std::invalid_argument);
    CHECK_THROWS_AS(flux_convergence(traj, {4.0, 1.0}), std::invalid_argument);
}

TEST_CASE("quadrature convergence: halving budget stride tightens integrals") {
    auto defect_with_stride = [](int stride) {
        SolverConfig cfg;
        cfg.n = 16;
        cfg.nu = 0.1;
        cfg.dt = 2.5e-3;
        cfg.t_end = 0.4;
        cfg.budget_stride = stride;
        cfg.snapshot_stride = 8;
        cfg.initial.kind = InitialSpec::Kind::random;
        cfg.initial.seed = 14;
        const Trajectory traj = simulate(cfg);
        return budget_row(traj, 0.0, 0.4).dissipation;
    };
    const double d4 = defect_with_stride(4);
    const double d2 = defect_with_stride(2);
    const double d1 = defect_with_stride(1);
    const double change_coarse = std::abs(d4 - d2);
    const double change_fine = std::abs(d2 - d1);
    CHECK(change_fine <= 0.5 * change_coarse + 1e-14 * std::abs(d1));
}

TEST_CASE("regularity norms: stationary closed form") {
    SolverConfig cfg;
    cfg.n = 16;
    cfg.nu = 0.1;
    cfg.dt = 5e-3;
    cfg.t_end = 1.0;
    cfg.snapshot_stride = 20;
    cfg.initial.kind = InitialSpec::Kind::beltrami;
    cfg.forcing.kind = ForcingSpec::Kind::steady_modes;
    const Grid grid(cfg.n);
    const SpectralField u0 = beltrami_field(grid, 1, 1, 1);
    for (int kx : {-1, 0, 1})
        for (int ky : {-1, 0, 1})
            for (int kz : {-1, 0, 1}) {
                if (std::abs(kx) + std::abs(ky) + std::abs(kz) != 1) continue;
                ForcingMode m;
                m.k = {kx, ky, kz};
                bool nonzero = false;
                for (int c = 0; c < 3; ++c) {
                    const Complex a = cfg.nu * u0.mode(c, kx, ky, kz) * 0.5;
                    m.amplitude[static_cast<std::size_t>(c)] = a;
                    nonzero = nonzero || std::abs(a) > 0.0;
                }
                if (nonzero) cfg.forcing.modes.push_back(m);
            }
    const Trajectory traj = simulate(cfg);
    const RegularityReport rep = regularity_norms(traj);

    // u(t) = u0: l3_v56 = ||u0||_{5/6} T^{1/3}, sup and L2H1 likewise exact.
    const double n56 = sobolev_norm(u0, 5.0 / 6.0);
    CHECK(rep.l3_v56 == doctest::Approx(n56 * std::cbrt(1.0)).epsilon(1e-8));
    CHECK(rep.sup_l2 == doctest::Approx(std::sqrt(l2_norm_sq(u0))).epsilon(1e-8));
    CHECK(rep.l2_h1 == doctest::Approx(sobolev_norm(u0, 1.0)).epsilon(1e-8));

    REQUIRE(rep.lrls_table.size() == 4);
    CHECK(rep.lrls_table[0].satisfies_shinbrot);       // (4,4)
    CHECK(!rep.lrls_table[0].satisfies_serrin);
    CHECK(rep.lrls_table[1].on_new_scaling);           // (3, 9/2)
    CHECK(rep.lrls_table[1].new_scaling_value == doctest::Approx(10.0 / 9.0).epsilon(1e-15));
    CHECK(rep.lrls_table[2].satisfies_shinbrot);       // (8,4)
    CHECK(rep.lrls_table[3].satisfies_serrin);         // (inf, 3) is Serrin's endpoint
}

TEST_CASE("classify pairs") {
    CHECK(classify_pair(4.0, 4.0).satisfies_shinbrot);
    CHECK(classify_pair(3.0, 4.5).new_scaling_value == doctest::Approx(10.0 / 9.0));
    CHECK(classify_pair(3.0, 4.5).on_new_scaling);
    CHECK(classify_pair(8.0, 4.0).satisfies_shinbrot);
    CHECK(!classify_pair(2.0, 6.0).satisfies_serrin);  // 3/6 + 2/2 = 3/2 > 1
    CHECK(classify_pair(0.0, 3.0).satisfies_serrin);   // r = infinity, s = 3
    CHECK(!classify_pair(4.0, 3.5).satisfies_shinbrot);
    CHECK_THROWS_AS(classify_pair(4.0, -1.0), std::invalid_argument);
}

TEST_CASE("theorem check: zero data passes with all quantities zero") {
    SolverConfig cfg;
    cfg.n = 8;
    cfg.nu = 0.1;
    cfg.dt = 1e-2;
    cfg.t_end = 0.1;
    cfg.initial.kind = InitialSpec::Kind::zero;
    const Trajectory traj = simulate(cfg);
    const TheoremVerdict verdict = theorem_check(traj);
    CHECK(verdict.pass);
    CHECK(verdict.l3_v56 == 0.0);
    CHECK(verdict.sup_l2 == 0.0);
    CHECK(verdict.defect == 0.0);
}

TEST_CASE("theorem check: beltrami run passes") {
    const Trajectory traj = beltrami_run(16, 0.1, 1e-3, 0.5);
    const TheoremVerdict verdict = theorem_check(traj);
    CHECK(verdict.pass);
    CHECK(verdict.hypotheses_finite);
    CHECK(std::abs(verdict.defect) <= verdict.tolerance);
}

TEST_CASE("under-resolved run raises the resolution flag") {
    SolverConfig cfg;
    cfg.n = 16;
    cfg.nu = 1e-3;
    cfg.dt = 2e-3;
    cfg.t_end = 0.05;
    cfg.initial.kind = InitialSpec::Kind::random;
    cfg.initial.seed = 3;
    const Trajectory traj = simulate(cfg);
    CHECK(traj.diagnostics().under_resolved);
    CHECK(traj.diagnostics().max_tail_fraction > tail_fraction_limit);

    const Trajectory good = beltrami_run(16, 0.1, 1e-2, 0.1);
    CHECK(!good.diagnostics().under_resolved);
}
