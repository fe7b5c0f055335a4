#include "energylab/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "energylab/regression.hpp"
#include "energylab/spectral_ops.hpp"
#include "energylab/trilinear.hpp"

namespace energylab {

namespace {

// Nearest sample index; t must lie within the sampled span.
std::size_t locate(const std::vector<double>& times, double t) {
    if (times.empty()) throw std::invalid_argument("audit: empty trajectory");
    if (t < times.front() - 1e-12 || t > times.back() + 1e-12)
        throw std::invalid_argument("audit: time outside trajectory span");
    const auto it = std::lower_bound(times.begin(), times.end(), t);
    if (it == times.end()) return times.size() - 1;
    std::size_t i = static_cast<std::size_t>(it - times.begin());
    if (i > 0 && std::abs(times[i - 1] - t) <= std::abs(times[i] - t)) --i;
    return i;
}

std::vector<double> budget_times(const Trajectory& traj) {
    std::vector<double> t;
    t.reserve(traj.budget().size());
    for (const BudgetSample& s : traj.budget()) t.push_back(s.t);
    return t;
}

// Trapezoid weights on [times[a], times[b]].
double trapezoid(const std::vector<double>& times, const std::vector<double>& values,
                 std::size_t a, std::size_t b) {
    double acc = 0.0;
    for (std::size_t i = a; i + 1 <= b; ++i)
        acc += 0.5 * (times[i + 1] - times[i]) * (values[i] + values[i + 1]);
    return acc;
}

}  // namespace

BudgetRow budget_row(const Trajectory& traj, double t0, double t) {
    if (t < t0) throw std::invalid_argument("audit: window end precedes start");
    const auto& budget = traj.budget();
    const std::vector<double> times = budget_times(traj);
    const std::size_t a = locate(times, t0);
    const std::size_t b = locate(times, t);

    std::vector<double> enstrophy(budget.size()), work(budget.size());
    for (std::size_t i = 0; i < budget.size(); ++i) {
        enstrophy[i] = budget[i].enstrophy;
        work[i] = budget[i].work_rate;
    }
    BudgetRow row;
    row.t0 = times[a];
    row.t = times[b];
    row.kinetic_change = budget[b].energy_sq - budget[a].energy_sq;
    row.dissipation = 2.0 * traj.nu() * trapezoid(times, enstrophy, a, b);
    row.work = 2.0 * trapezoid(times, work, a, b);
    return row;
}

double ee_defect(const Trajectory& traj, double t0, double t) {
    const BudgetRow row = budget_row(traj, t0, t);
    return row.kinetic_change + row.dissipation - row.work;
}

double sei_margin(const Trajectory& traj, double t0, double t) {
    return -ee_defect(traj, t0, t);
}

double min_sei_margin(const Trajectory& traj) {
    const auto& budget = traj.budget();
    if (budget.empty()) throw std::invalid_argument("audit: empty trajectory");
    const std::vector<double> times = budget_times(traj);

    // Suffix trapezoid sums make each start time O(1).
    const std::size_t count = budget.size();
    std::vector<double> dissipation_tail(count, 0.0), work_tail(count, 0.0);
    for (std::size_t i = count - 1; i-- > 0;) {
        const double h = times[i + 1] - times[i];
        dissipation_tail[i] = dissipation_tail[i + 1] +
                              0.5 * h * (budget[i].enstrophy + budget[i + 1].enstrophy);
        work_tail[i] = work_tail[i + 1] + 0.5 * h * (budget[i].work_rate + budget[i + 1].work_rate);
    }
    double worst = std::numeric_limits<double>::infinity();
    const double final_energy = budget.back().energy_sq;
    for (std::size_t i = 0; i < count; ++i) {
        const double defect = final_energy - budget[i].energy_sq +
                              2.0 * traj.nu() * dissipation_tail[i] - 2.0 * work_tail[i];
        worst = std::min(worst, -defect);
    }
    return worst;
}

double lemma_defect(const Trajectory& traj, double t0, double t, double kappa) {
    const DefectReport rep = flux_convergence(traj, {kappa}, {{t0, t}});
    return rep.rows.at(0).lemma;
}

DefectReport flux_convergence(const Trajectory& traj, const std::vector<double>& kappas,
                              const std::vector<std::pair<double, double>>& windows) {
    if (kappas.empty()) throw std::invalid_argument("flux_convergence: empty kappa ladder");
    for (std::size_t i = 1; i < kappas.size(); ++i)
        if (!(kappas[i] > kappas[i - 1]))
            throw std::invalid_argument("flux_convergence: ladder must increase");
    for (double k : kappas) (void)Cutoff(k);

    const std::vector<double>& snap_times = traj.snapshot_times();
    if (snap_times.size() < 2)
        throw std::invalid_argument("flux_convergence: need at least two snapshots");

    std::vector<std::pair<double, double>> spans = windows;
    if (spans.empty()) spans.push_back({snap_times.front(), snap_times.back()});

    DefectReport report;
    report.kappas = kappas;
    report.majorant_constant = regression::c2_flux_majorant;

    // Per-snapshot, per-kappa integrand values, one streaming pass.
    const std::size_t nk = kappas.size();
    const std::size_t ns = snap_times.size();
    std::vector<std::vector<double>> flux(nk, std::vector<double>(ns));
    std::vector<std::vector<double>> signed_flux(nk, std::vector<double>(ns));
    std::vector<std::vector<double>> hh(nk, std::vector<double>(ns));
    std::vector<std::vector<double>> lh(nk, std::vector<double>(ns));
    for (std::size_t si = 0; si < ns; ++si) {
        const SpectralField u = traj.snapshot(si);
        for (std::size_t ki = 0; ki < nk; ++ki) {
            const FluxDecomposition d = flux_decomposition(u, Cutoff(kappas[ki]));
            signed_flux[ki][si] = d.total;
            flux[ki][si] = std::abs(d.total);
            hh[ki][si] = std::abs(d.t_hh);
            lh[ki][si] = std::abs(d.t_lh);
            if (d.majorant > 0.0) {
                const double ratio = std::abs(d.t_hh) / d.majorant;
                report.majorant_max_ratio = std::max(report.majorant_max_ratio, ratio);
            }
        }
    }
    report.majorant_ok = report.majorant_max_ratio <= report.majorant_constant;

    for (const auto& [w0, w1] : spans) {
        const std::size_t a = locate(snap_times, w0);
        const std::size_t b = locate(snap_times, w1);
        const double ee = ee_defect(traj, snap_times[a], snap_times[b]);
        for (std::size_t ki = 0; ki < nk; ++ki) {
            DefectRow row;
            row.t0 = snap_times[a];
            row.t = snap_times[b];
            row.kappa = kappas[ki];
            row.ee = ee;
            row.lemma = ee - 2.0 * trapezoid(snap_times, signed_flux[ki], a, b);
            row.flux_integral = trapezoid(snap_times, flux[ki], a, b);
            row.hh_integral = trapezoid(snap_times, hh[ki], a, b);
            row.lh_integral = trapezoid(snap_times, lh[ki], a, b);
            report.rows.push_back(row);
        }
    }
    return report;
}

LrLsRow classify_pair(double r, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("classify_pair: s must be positive");
    const bool r_infinite = !(r > 0.0) || !std::isfinite(r);
    LrLsRow row;
    row.r = r_infinite ? 0.0 : r;
    row.s = s;
    const double inv_r = r_infinite ? 0.0 : 1.0 / r;
    row.satisfies_serrin = (3.0 / s + 2.0 * inv_r <= 1.0) && s >= 3.0;
    row.satisfies_shinbrot = (2.0 / s + 2.0 * inv_r <= 1.0) && s >= 4.0;
    row.new_scaling_value = 2.0 / s + 2.0 * inv_r;
    row.on_new_scaling = std::abs(row.new_scaling_value - 10.0 / 9.0) <= 1e-12;
    return row;
}

RegularityReport regularity_norms(const Trajectory& traj,
                                  const std::vector<std::pair<double, double>>& extra_pairs) {
    const auto& budget = traj.budget();
    if (budget.size() < 2)
        throw std::invalid_argument("regularity_norms: need at least two budget samples");

    RegularityReport report;
    {
        const std::vector<double> times = budget_times(traj);
        std::vector<double> enstrophy(budget.size());
        for (std::size_t i = 0; i < budget.size(); ++i) {
            report.sup_l2 = std::max(report.sup_l2, std::sqrt(budget[i].energy_sq));
            enstrophy[i] = budget[i].enstrophy;
        }
        report.l2_h1 = std::sqrt(trapezoid(times, enstrophy, 0, budget.size() - 1));
    }

    // Spatial norms need fields; sampled at snapshot times.
    std::vector<std::pair<double, double>> pairs = {{4.0, 4.0}, {3.0, 4.5}, {8.0, 4.0}, {0.0, 3.0}};
    pairs.insert(pairs.end(), extra_pairs.begin(), extra_pairs.end());

    const std::vector<double>& times = traj.snapshot_times();
    const std::size_t ns = times.size();
    if (ns < 2) throw std::invalid_argument("regularity_norms: need at least two snapshots");

    std::vector<double> v56_cubed(ns);
    std::vector<std::vector<double>> ls_norms(pairs.size(), std::vector<double>(ns));
    for (std::size_t si = 0; si < ns; ++si) {
        const SpectralField u = traj.snapshot(si);
        v56_cubed[si] = std::pow(sobolev_norm(u, 5.0 / 6.0), 3.0);
        for (std::size_t pi = 0; pi < pairs.size(); ++pi)
            ls_norms[pi][si] = lebesgue_norm(u, pairs[pi].second);
    }
    report.l3_v56 = std::cbrt(trapezoid(times, v56_cubed, 0, ns - 1));

    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        LrLsRow row = classify_pair(pairs[pi].first, pairs[pi].second);
        if (row.r == 0.0) {
            row.norm = *std::max_element(ls_norms[pi].begin(), ls_norms[pi].end());
        } else {
            std::vector<double> powed(ns);
            for (std::size_t si = 0; si < ns; ++si) powed[si] = std::pow(ls_norms[pi][si], row.r);
            row.norm = std::pow(trapezoid(times, powed, 0, ns - 1), 1.0 / row.r);
        }
        report.lrls_table.push_back(row);
    }
    return report;
}

TheoremVerdict theorem_check(const Trajectory& traj) {
    const RegularityReport reg = regularity_norms(traj);
    TheoremVerdict verdict;
    verdict.l3_v56 = reg.l3_v56;
    verdict.sup_l2 = reg.sup_l2;
    verdict.l2_h1 = reg.l2_h1;
    verdict.hypotheses_finite = std::isfinite(reg.l3_v56) && std::isfinite(reg.sup_l2) &&
                                std::isfinite(reg.l2_h1);

    const double t0 = traj.t_begin();
    const double t1 = traj.t_end();
    const BudgetRow row = budget_row(traj, t0, t1);
    verdict.defect = row.kinetic_change + row.dissipation - row.work;
    const double initial_energy = traj.budget().front().energy_sq;
    verdict.tolerance = 1e-7 * std::max({initial_energy, row.dissipation,
                                         std::numeric_limits<double>::min()});
    verdict.pass = verdict.hypotheses_finite && std::abs(verdict.defect) <= verdict.tolerance;
    return verdict;
}

}  // namespace energylab
