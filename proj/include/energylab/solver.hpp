#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "energylab/field.hpp"
#include "energylab/trajectory.hpp"

namespace energylab {

struct ForcingMode {
    std::array<int, 3> k{};
    std::array<Complex, 3> amplitude{};
};

struct ForcingSpec {
    enum class Kind { none, steady_modes, time_periodic };
    Kind kind = Kind::none;
    std::vector<ForcingMode> modes;
    double frequency = 0.0;  // g(t) = g0 cos(frequency t) for time_periodic
};

struct InitialSpec {
    enum class Kind { zero, beltrami, taylor_green, random, file };
    Kind kind = Kind::taylor_green;
    std::array<double, 3> abc{1.0, 1.0, 1.0};
    double slope = 5.0 / 3.0;     // random spectrum slope
    std::uint64_t seed = 1;
    double amplitude = 1.0;       // target |u|_{L^2} for random initial data
    std::string path;             // snapshot file for Kind::file
};

struct SolverConfig {
    int n = 32;
    double nu = 0.05;
    double dt = 5e-3;
    double t_end = 1.0;
    double cfl = 0.5;          // advective CFL margin; viscosity is exact
    int snapshot_stride = 10;  // steps between stored snapshots
    int budget_stride = 1;     // steps between budget samples; divides snapshot_stride
    ForcingSpec forcing;
    InitialSpec initial;
};

// Throws std::invalid_argument describing the first violated constraint.
void validate(const SolverConfig& config);

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CflViolation : SolverError {
    using SolverError::SolverError;
};

// ABC flow with curl u = u; |u|^2 = (2pi)^3 (A^2 + B^2 + C^2).
SpectralField beltrami_field(const Grid& grid, double a, double b, double c);

// u = (sin x cos y cos z, -cos x sin y cos z, 0); modes on |k|^2 = 3 only.
SpectralField taylor_green_field(const Grid& grid);

// Projected forcing g = P f at t = 0 amplitude (time factor applied by the
// stepper).
SpectralField forcing_field(const ForcingSpec& spec, const Grid& grid);

// All kinds except `file`, which the caller resolves (see simulate's
// initial override).
SpectralField make_initial_field(const InitialSpec& spec, const Grid& grid);

// One integrating-factor RK4 step: the viscous semigroup e^{-nu |k|^2 dt}
// is applied exactly, the advective term (rotational form) and forcing are
// advanced with classical RK4 stage combinations.
SpectralField step(const SpectralField& u, double t, const SolverConfig& config);

// Snapshot sink: receives (step index, time, field), returns the loader the
// trajectory will hand out for that snapshot.
using SnapshotSink =
    std::function<std::function<SpectralField()>(int, double, const SpectralField&)>;

Trajectory simulate(const SolverConfig& config,
                    std::optional<SpectralField> initial = std::nullopt,
                    SnapshotSink sink = nullptr);

// Fraction of energy in the outermost retained shell above which a run is
// reported as under-resolved.
inline constexpr double tail_fraction_limit = 1e-6;

}  // namespace energylab
