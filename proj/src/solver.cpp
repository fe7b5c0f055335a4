#include "energylab/solver.hpp"

#include <cmath>
#include <iostream>
#include <limits>

#include "energylab/kernels.hpp"
#include "energylab/spectral_ops.hpp"
#include "energylab/transform.hpp"

namespace energylab {

void validate(const SolverConfig& config) {
    Grid grid(config.n);  // throws on bad n
    if (!(config.nu >= 0.0) || !std::isfinite(config.nu))
        throw std::invalid_argument("SolverConfig: nu must be >= 0");
    if (!(config.dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be > 0");
    if (!(config.t_end >= 0.0)) throw std::invalid_argument("SolverConfig: t_end must be >= 0");
    if (!(config.cfl > 0.0)) throw std::invalid_argument("SolverConfig: cfl must be > 0");
    if (config.snapshot_stride < 1 || config.budget_stride < 1)
        throw std::invalid_argument("SolverConfig: strides must be >= 1");
    if (config.budget_stride > config.snapshot_stride ||
        config.snapshot_stride % config.budget_stride != 0)
        throw std::invalid_argument(
            "SolverConfig: budget_stride must divide snapshot_stride");
    if (config.initial.kind == InitialSpec::Kind::random && !(config.initial.amplitude > 0.0))
        throw std::invalid_argument("SolverConfig: random initial amplitude must be > 0");
    for (const ForcingMode& m : config.forcing.modes) {
        const int l = m.k[0] * m.k[0] + m.k[1] * m.k[1] + m.k[2] * m.k[2];
        if (l == 0) throw std::invalid_argument("ForcingSpec: zero mode not allowed");
        if (l > grid.dealias_radius() * grid.dealias_radius())
            throw std::invalid_argument("ForcingSpec: mode outside dealias sphere");
    }
}

SpectralField beltrami_field(const Grid& grid, double a, double b, double c) {
    SpectralField u(grid);
    const Complex I{0.0, 1.0};
    // u = (A sin z + C cos y, B sin x + A cos z, C sin y + B cos x)
    u.mode(0, 0, 0, 1) = -I * (a / 2.0);
    u.mode(0, 0, 0, -1) = I * (a / 2.0);
    u.mode(0, 0, 1, 0) = c / 2.0;
    u.mode(0, 0, -1, 0) = c / 2.0;
    u.mode(1, 1, 0, 0) = -I * (b / 2.0);
    u.mode(1, -1, 0, 0) = I * (b / 2.0);
    u.mode(1, 0, 0, 1) = a / 2.0;
    u.mode(1, 0, 0, -1) = a / 2.0;
    u.mode(2, 0, 1, 0) = -I * (c / 2.0);
    u.mode(2, 0, -1, 0) = I * (c / 2.0);
    u.mode(2, 1, 0, 0) = b / 2.0;
    u.mode(2, -1, 0, 0) = b / 2.0;
    return u;
}

SpectralField taylor_green_field(const Grid& grid) {
    SpectralField u(grid);
    const Complex I{0.0, 1.0};
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) {
                u.mode(0, sx, sy, sz) = -I * (sx / 8.0);
                u.mode(1, sx, sy, sz) = I * (sy / 8.0);
            }
    return u;
}

SpectralField forcing_field(const ForcingSpec& spec, const Grid& grid) {
    SpectralField g(grid);
    if (spec.kind == ForcingSpec::Kind::none) return g;
    for (const ForcingMode& m : spec.modes) {
        for (int c = 0; c < 3; ++c) {
            g.mode(c, m.k[0], m.k[1], m.k[2]) += m.amplitude[c];
            g.mode(c, -m.k[0], -m.k[1], -m.k[2]) += std::conj(m.amplitude[c]);
        }
    }
    dealias_inplace(g);
    leray_project_inplace(g);
    return g;
}

SpectralField make_initial_field(const InitialSpec& spec, const Grid& grid) {
    switch (spec.kind) {
        case InitialSpec::Kind::zero:
            return SpectralField(grid);
        case InitialSpec::Kind::beltrami:
            return beltrami_field(grid, spec.abc[0], spec.abc[1], spec.abc[2]);
        case InitialSpec::Kind::taylor_green:
            return taylor_green_field(grid);
        case InitialSpec::Kind::random: {
            SpectralField u = random_divfree_field(grid, spec.slope, spec.seed);
            const double norm = std::sqrt(l2_norm_sq(u));
            if (norm > 0.0) scale_inplace(u, spec.amplitude / norm);
            return u;
        }
        case InitialSpec::Kind::file:
            throw std::invalid_argument(
                "make_initial_field: file initial data must be resolved by the caller");
    }
    throw std::logic_error("make_initial_field: unreachable");
}

namespace {

class Stepper {
public:
    Stepper(const SolverConfig& config, const Grid& grid)
        : config_(config),
          grid_(grid),
          ft_(transforms_for(grid)),
          forcing_(forcing_field(config.forcing, grid)),
          has_forcing_(config.forcing.kind != ForcingSpec::Kind::none) {}

    void set_dt(double dt) {
        dt_ = dt;
        const int half = grid_.n() / 2;
        const int lmax = 3 * half * half;
        e_half_.resize(static_cast<std::size_t>(lmax) + 1);
        e_full_.resize(static_cast<std::size_t>(lmax) + 1);
        for (int l = 0; l <= lmax; ++l) {
            e_half_[static_cast<std::size_t>(l)] = std::exp(-config_.nu * l * dt_ / 2.0);
            e_full_[static_cast<std::size_t>(l)] = std::exp(-config_.nu * l * dt_);
        }
    }

    double last_max_speed() const noexcept { return last_max_speed_; }

    double forcing_factor(double t) const {
        if (!has_forcing_) return 0.0;
        if (config_.forcing.kind == ForcingSpec::Kind::time_periodic)
            return std::cos(config_.forcing.frequency * t);
        return 1.0;
    }

    const SpectralField& forcing_amplitude() const noexcept { return forcing_; }

    // One IFRK4 step; u is advanced in place from t to t + dt.
    void advance(SpectralField& u, double t) {
        const SpectralField n1 = rhs(u, t, true);
        if (!std::isfinite(last_max_speed_))
            throw SolverError("solver: non-finite velocity at t=" + std::to_string(t));
        const double limit = config_.cfl * grid_.spacing() /
                             std::max(last_max_speed_, 1e-300);
        if (dt_ > limit)
            throw CflViolation("solver: CFL violation at t=" + std::to_string(t) +
                               " (dt=" + std::to_string(dt_) +
                               ", limit=" + std::to_string(limit) + ")");

        SpectralField ua(grid_), ub(grid_), uc(grid_);
        combine(ua, u, n1, dt_ / 2.0, Stage::a);       // ua = E (u + dt/2 n1)
        const SpectralField n2 = rhs(ua, t + dt_ / 2.0, false);
        combine(ub, u, n2, dt_ / 2.0, Stage::b);       // ub = E u + dt/2 n2
        const SpectralField n3 = rhs(ub, t + dt_ / 2.0, false);
        combine(uc, u, n3, dt_, Stage::c);             // uc = E2 u + dt E n3
        const SpectralField n4 = rhs(uc, t + dt_, false);
        finish(u, n1, n2, n3, n4);
    }

private:
    enum class Stage { a, b, c };

    int lambda_of(std::size_t flat) const {
        const auto k = grid_.wavevector(flat % grid_.volume());
        return k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    }

    // Nonlinear plus forcing term N(u,t) = -P(curl u x u) + g(t), dealiased.
    SpectralField rhs(const SpectralField& u, double t, bool measure_speed) {
        const std::size_t vol = grid_.volume();
        const PhysicalField pu = ft_.to_physical(u);
        if (measure_speed) {
            const double* x = pu.component(0);
            const double* y = pu.component(1);
            const double* z = pu.component(2);
            auto speed_sq = [&](std::size_t m) {
                return x[m] * x[m] + y[m] * y[m] + z[m] * z[m];
            };
            last_max_speed_ = std::sqrt(kernels::det_max(vol, speed_sq));
            // max() drops NaNs; a sum propagates them.
            if (!std::isfinite(kernels::det_sum(vol, speed_sq)))
                last_max_speed_ = std::numeric_limits<double>::quiet_NaN();
        }
        const PhysicalField pw = ft_.to_physical(curl(u));
        PhysicalField prod(grid_);
        {
            const double* ux = pu.component(0);
            const double* uy = pu.component(1);
            const double* uz = pu.component(2);
            const double* wx = pw.component(0);
            const double* wy = pw.component(1);
            const double* wz = pw.component(2);
            double* px = prod.component(0);
            double* py = prod.component(1);
            double* pz = prod.component(2);
            kernels::par_for(vol, [&](std::size_t m) {
                px[m] = wy[m] * uz[m] - wz[m] * uy[m];
                py[m] = wz[m] * ux[m] - wx[m] * uz[m];
                pz[m] = wx[m] * uy[m] - wy[m] * ux[m];
            });
        }
        SpectralField n = ft_.from_physical(prod);
        dealias_inplace(n);
        leray_project_inplace(n);
        scale_inplace(n, -1.0);
        if (has_forcing_) {
            const double f = forcing_factor(t);
            if (f != 0.0) add_scaled_inplace(n, forcing_, Complex{f, 0.0});
        }
        return n;
    }

    void combine(SpectralField& out, const SpectralField& u, const SpectralField& n,
                 double w, Stage stage) const {
        auto du = u.data();
        auto dn = n.data();
        auto dout = out.data();
        kernels::par_for(dout.size(), [&](std::size_t i) {
            const int l = lambda_of(i);
            const double eh = e_half_[static_cast<std::size_t>(l)];
            const double ef = e_full_[static_cast<std::size_t>(l)];
            switch (stage) {
                case Stage::a: dout[i] = eh * (du[i] + w * dn[i]); break;
                case Stage::b: dout[i] = eh * du[i] + w * dn[i]; break;
                case Stage::c: dout[i] = ef * du[i] + w * eh * dn[i]; break;
            }
        });
    }

    void finish(SpectralField& u, const SpectralField& n1, const SpectralField& n2,
                const SpectralField& n3, const SpectralField& n4) const {
        auto du = u.data();
        auto d1 = n1.data();
        auto d2 = n2.data();
        auto d3 = n3.data();
        auto d4 = n4.data();
        const double w = dt_ / 6.0;
        kernels::par_for(du.size(), [&](std::size_t i) {
            const int l = lambda_of(i);
            const double eh = e_half_[static_cast<std::size_t>(l)];
            const double ef = e_full_[static_cast<std::size_t>(l)];
            du[i] = ef * du[i] + w * (ef * d1[i] + 2.0 * eh * (d2[i] + d3[i]) + d4[i]);
        });
    }

    const SolverConfig& config_;
    Grid grid_;
    const FourierTransform& ft_;
    SpectralField forcing_;
    bool has_forcing_;
    double dt_ = 0.0;
    std::vector<double> e_half_, e_full_;
    double last_max_speed_ = 0.0;
};

double tail_fraction(const SpectralField& u) {
    const Grid& g = u.grid();
    const int radius = g.dealias_radius();
    const double inner_r2 = static_cast<double>(radius - 1) * (radius - 1);
    const std::size_t vol = g.volume();
    double tail = 0.0, total = 0.0;
    for (int c = 0; c < 3; ++c) {
        const Complex* p = u.component(c);
        total += kernels::det_sum(vol, [&](std::size_t i) { return std::norm(p[i]); });
        tail += kernels::det_sum(vol, [&](std::size_t i) {
            const auto k = g.wavevector(i);
            const double l = double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
            return l > inner_r2 ? std::norm(p[i]) : 0.0;
        });
    }
    return total > 0.0 ? tail / total : 0.0;
}

}  // namespace

SpectralField step(const SpectralField& u, double t, const SolverConfig& config) {
    validate(config);
    Grid grid(config.n);
    require_same_grid(grid, u.grid());
    Stepper stepper(config, grid);
    stepper.set_dt(config.dt);
    SpectralField out = u;
    stepper.advance(out, t);
    return out;
}

Trajectory simulate(const SolverConfig& config, std::optional<SpectralField> initial,
                    SnapshotSink sink) {
    validate(config);
    const Grid grid(config.n);

    SpectralField u = initial.has_value() ? std::move(*initial)
                                          : make_initial_field(config.initial, grid);
    require_same_grid(grid, u.grid());
    dealias_inplace(u);
    leray_project_inplace(u);

    Trajectory traj(grid, config.nu);
    Stepper stepper(config, grid);

    const long nsteps = config.t_end > 0.0
                            ? std::max<long>(1, std::lround(config.t_end / config.dt))
                            : 0;
    const double dt = nsteps > 0 ? config.t_end / static_cast<double>(nsteps) : config.dt;
    stepper.set_dt(dt);

    const SpectralField& g0 = stepper.forcing_amplitude();

    auto record = [&](long step_index, double t, bool want_snapshot) {
        const BudgetSample sample{t, l2_norm_sq(u), std::pow(sobolev_norm(u, 1.0), 2),
                                  stepper.forcing_factor(t) * inner(g0, u)};
        traj.add_budget(sample);
        const double tail = tail_fraction(u);
        auto& diag = traj.diagnostics();
        diag.max_tail_fraction = std::max(diag.max_tail_fraction, tail);
        diag.under_resolved = diag.max_tail_fraction > tail_fraction_limit;
        if (want_snapshot) {
            if (sink) {
                traj.add_snapshot(t, sink(static_cast<int>(step_index), t, u));
            } else {
                auto held = std::make_shared<const SpectralField>(u);
                traj.add_snapshot(t, [held]() { return *held; });
            }
            std::cerr << "snapshot t=" << t << " energy=" << sample.energy_sq
                      << " enstrophy=" << sample.enstrophy
                      << " cfl=" << dt * stepper.last_max_speed() / grid.spacing() << "\n";
        }
    };

    record(0, 0.0, true);
    for (long s = 1; s <= nsteps; ++s) {
        stepper.advance(u, static_cast<double>(s - 1) * dt);
        const double t = static_cast<double>(s) * dt;
        const bool final_step = (s == nsteps);
        if (final_step || s % config.budget_stride == 0)
            record(s, t, final_step || s % config.snapshot_stride == 0);
    }
    return traj;
}

}  // namespace energylab
