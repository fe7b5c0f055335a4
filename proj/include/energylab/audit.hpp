#pragma once

#include <optional>
#include <vector>

#include "energylab/trajectory.hpp"

namespace energylab {

// Terms of the energy balance over [t0, t], trapezoid quadrature on the
// budget samples: kinetic_change = |u(t)|^2 - |u(t0)|^2, dissipation =
// 2 nu int ||u||^2 ds, work = 2 int (g,u) ds.
struct BudgetRow {
    double t0 = 0.0;
    double t = 0.0;
    double kinetic_change = 0.0;
    double dissipation = 0.0;
    double work = 0.0;
};

BudgetRow budget_row(const Trajectory& traj, double t0, double t);

// kinetic_change + dissipation - work; zero when the energy equality holds.
double ee_defect(const Trajectory& traj, double t0, double t);

// -ee_defect; the strong energy inequality holds iff margin >= -tol.
double sei_margin(const Trajectory& traj, double t0, double t);

// Worst sei_margin over every sampled start time t0 (window end fixed at
// the final time). Finite sampling stands in for the "almost every t0"
// clause; the audit simply checks all of them.
double min_sei_margin(const Trajectory& traj);

// Residual of the cutoff-corrected identity: ee terms minus
// 2 int b(u, P_kappa u, u) ds, the flux integrand evaluated at snapshot
// times. At kappa >= lambda_max it coincides with ee_defect.
double lemma_defect(const Trajectory& traj, double t0, double t, double kappa);

struct DefectRow {
    double t0 = 0.0;
    double t = 0.0;
    double kappa = 0.0;
    double ee = 0.0;
    double lemma = 0.0;
    double flux_integral = 0.0;  // int |b(u, u_low, u)|
    double hh_integral = 0.0;    // int |b(u_high, u_low, u_high)|
    double lh_integral = 0.0;    // int |b(u_low,  u_low, u_high)|
};

struct DefectReport {
    std::vector<double> kappas;
    std::vector<DefectRow> rows;
    double majorant_constant = 0.0;   // bound applied per sample
    double majorant_max_ratio = 0.0;  // max |t_hh| / ||u||_{5/6}^3 observed
    bool majorant_ok = true;
};

// One pass over the snapshots: flux decompositions for every kappa in the
// (increasing) ladder, integrated over each window; windows default to the
// full span. Also verifies the per-sample majorant |t_hh| <= C ||u||_{5/6}^3
// with C from the regression ledger.
DefectReport flux_convergence(const Trajectory& traj, const std::vector<double>& kappas,
                              const std::vector<std::pair<double, double>>& windows = {});

struct LrLsRow {
    double r = 0.0;  // temporal exponent; infinity encoded as 0
    double s = 0.0;  // spatial exponent
    double norm = 0.0;
    bool satisfies_serrin = false;
    bool satisfies_shinbrot = false;
    double new_scaling_value = 0.0;  // 2/s + 2/r
    bool on_new_scaling = false;     // equals 10/9
};

struct RegularityReport {
    double l3_v56 = 0.0;   // (int ||u||_{5/6}^3 dt)^{1/3}
    double sup_l2 = 0.0;   // max_t |u(t)| over budget samples
    double l2_h1 = 0.0;    // (int ||u||^2 dt)^{1/2}
    std::vector<LrLsRow> lrls_table;
};

// Condition flags for an (r, s) pair; r <= 0 means r = infinity.
LrLsRow classify_pair(double r, double s);

RegularityReport regularity_norms(const Trajectory& traj,
                                  const std::vector<std::pair<double, double>>& extra_pairs = {});

struct TheoremVerdict {
    bool pass = false;
    double l3_v56 = 0.0;
    double sup_l2 = 0.0;
    double l2_h1 = 0.0;
    double defect = 0.0;
    double tolerance = 0.0;
    bool hypotheses_finite = false;
};

// Hypothesis side: finite L^3 V^{5/6}, L^inf L^2 and L^2 H^1 norms over
// [0,T]; conclusion side: |ee_defect| within 1e-7 of the energy scale.
TheoremVerdict theorem_check(const Trajectory& traj);

}  // namespace energylab
