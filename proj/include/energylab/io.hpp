#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "energylab/field.hpp"
#include "energylab/solver.hpp"
#include "energylab/trajectory.hpp"

namespace energylab::io {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadMagic : IoError {
    using IoError::IoError;
};
struct VersionMismatch : IoError {
    using IoError::IoError;
};
struct TruncatedFile : IoError {
    using IoError::IoError;
};
struct InvariantViolation : IoError {
    using IoError::IoError;
};
struct GridMismatch : IoError {
    using IoError::IoError;
};
struct ConfigError : IoError {
    using IoError::IoError;
};

// Snapshot container: 8-byte magic "ELSNAP\r\n", u32 version, u32 n,
// f64 time, f64 nu, then 3 components x n^3 modes in lexicographic
// (kx,ky,kz) wrap-around order, each mode two little-endian f64 (re, im).
// Writes are atomic (temp file + rename); reads validate the header, the
// payload size, and the field invariants.
inline constexpr std::uint32_t snapshot_version = 1;

struct SnapshotData {
    SpectralField field;
    double time;
    double nu;
};

void write_snapshot(const SpectralField& field, double time, double nu,
                    const std::filesystem::path& path);
SnapshotData read_snapshot(const std::filesystem::path& path);

// Line-oriented `key = value` configuration with dotted keys and `#`
// comments; `forcing.mode` may repeat. Unknown keys are rejected.
struct RunConfig {
    SolverConfig solver;
    std::string output_dir = "run";
    std::vector<double> kappas;                         // audit ladder; empty = default
    std::vector<std::pair<double, double>> windows;     // audit windows; empty = [0, T]
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
std::string config_to_string(const RunConfig& config);

// CSV with a header row; numbers at 17 significant digits.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
std::string format_double(double v);

// Run directory layout: config.resolved, budget.csv, run_summary.txt,
// snapshots/snap_XXXXXX.snap. `initial` overrides the configured initial
// field (used for initial.kind = file).
Trajectory simulate_to_dir(const RunConfig& config, const std::filesystem::path& dir,
                           std::optional<SpectralField> initial = std::nullopt);
Trajectory load_run_dir(const std::filesystem::path& dir);
RunConfig load_run_config(const std::filesystem::path& dir);

}  // namespace energylab::io
