#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "energylab/field.hpp"
#include "energylab/grid.hpp"

namespace energylab {

// Densely sampled scalars of the energy budget at time t:
// |u|^2, ||u||^2 = |grad u|^2, and the work rate (g,u).
struct BudgetSample {
    double t;
    double energy_sq;
    double enstrophy;
    double work_rate;
};

struct ResolutionDiag {
    double max_tail_fraction = 0.0;  // peak energy fraction in the outermost shell
    bool under_resolved = false;
};

// Time-ordered snapshots plus budget samples. Snapshots are held behind
// loaders so a trajectory can live in memory or stream from a run directory.
class Trajectory {
public:
    Trajectory(const Grid& grid, double nu) : grid_(grid), nu_(nu) {}

    const Grid& grid() const noexcept { return grid_; }
    double nu() const noexcept { return nu_; }

    void add_snapshot(double t, std::function<SpectralField()> load) {
        snap_times_.push_back(t);
        loaders_.push_back(std::move(load));
    }
    void add_budget(const BudgetSample& s) { budget_.push_back(s); }

    std::size_t snapshot_count() const noexcept { return snap_times_.size(); }
    double snapshot_time(std::size_t i) const { return snap_times_.at(i); }
    const std::vector<double>& snapshot_times() const noexcept { return snap_times_; }
    SpectralField snapshot(std::size_t i) const { return loaders_.at(i)(); }

    const std::vector<BudgetSample>& budget() const noexcept { return budget_; }

    double t_begin() const {
        if (budget_.empty()) throw std::logic_error("Trajectory: no budget samples");
        return budget_.front().t;
    }
    double t_end() const {
        if (budget_.empty()) throw std::logic_error("Trajectory: no budget samples");
        return budget_.back().t;
    }

    ResolutionDiag& diagnostics() noexcept { return diag_; }
    const ResolutionDiag& diagnostics() const noexcept { return diag_; }

private:
    Grid grid_;
    double nu_;
    std::vector<double> snap_times_;
    std::vector<std::function<SpectralField()>> loaders_;
    std::vector<BudgetSample> budget_;
    ResolutionDiag diag_;
};

}  // namespace energylab
