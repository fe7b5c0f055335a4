#include "energylab/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "energylab/spectral_ops.hpp"

namespace energylab::io {

namespace fs = std::filesystem;

namespace {

constexpr char snapshot_magic[8] = {'E', 'L', 'S', 'N', 'A', 'P', '\r', '\n'};
constexpr double invariant_tol = 1e-10;

struct SnapshotHeader {
    char magic[8];
    std::uint32_t version;
    std::uint32_t n;
    double time;
    double nu;
};
static_assert(sizeof(SnapshotHeader) == 32);

void atomic_write(const fs::path& path, const std::string& bytes) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw IoError("short write: " + tmp.string());
    }
    fs::rename(tmp, path);
}

}  // namespace

void write_snapshot(const SpectralField& field, double time, double nu, const fs::path& path) {
    SnapshotHeader header{};
    std::memcpy(header.magic, snapshot_magic, sizeof(snapshot_magic));
    header.version = snapshot_version;
    header.n = static_cast<std::uint32_t>(field.grid().n());
    header.time = time;
    header.nu = nu;

    std::string bytes;
    bytes.resize(sizeof(header) + field.data().size() * sizeof(Complex));
    std::memcpy(bytes.data(), &header, sizeof(header));
    std::memcpy(bytes.data() + sizeof(header), field.data().data(),
                field.data().size() * sizeof(Complex));
    atomic_write(path, bytes);
}

SnapshotData read_snapshot(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open snapshot: " + path.string());

    SnapshotHeader header{};
    in.read(reinterpret_cast<char*>(&header), sizeof(header));
    if (in.gcount() != sizeof(header))
        throw TruncatedFile("snapshot truncated in header: " + path.string());
    if (std::memcmp(header.magic, snapshot_magic, sizeof(snapshot_magic)) != 0)
        throw BadMagic("bad magic: " + path.string());
    if (header.version != snapshot_version)
        throw VersionMismatch("unsupported snapshot version " + std::to_string(header.version) +
                              ": " + path.string());
    if (header.n < 4 || header.n % 2 != 0 || header.n > 4096)
        throw IoError("implausible grid size in header: " + path.string());

    Grid grid(static_cast<int>(header.n));
    SpectralField field(grid);
    const std::streamsize payload =
        static_cast<std::streamsize>(field.data().size() * sizeof(Complex));
    in.read(reinterpret_cast<char*>(field.data().data()), payload);
    if (in.gcount() != payload) throw TruncatedFile("snapshot truncated: " + path.string());
    in.peek();
    if (!in.eof()) throw TruncatedFile("trailing bytes in snapshot: " + path.string());

    const InvariantReport rep = check_invariants(field);
    const double scale = std::max(rep.amplitude, 1e-300);
    if (rep.hermitian_violation > invariant_tol * scale)
        throw InvariantViolation("snapshot is not conjugate-symmetric: " + path.string());
    if (rep.mean_violation > invariant_tol * scale)
        throw InvariantViolation("snapshot has nonzero mean mode: " + path.string());
    if (rep.divergence_violation > invariant_tol * scale)
        throw InvariantViolation("snapshot is not divergence-free: " + path.string());
    if (rep.support_violation > invariant_tol * scale)
        throw InvariantViolation("snapshot has modes outside the dealias sphere: " +
                                 path.string());
    return SnapshotData{std::move(field), header.time, header.nu};
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const fs::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ostringstream out;
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw IoError("csv row/header size mismatch");
        for (std::size_t i = 0; i < row.size(); ++i)
            out << format_double(row[i]) << (i + 1 < row.size() ? "," : "\n");
    }
    atomic_write(path, out.str());
}

namespace {

const char* kind_name(ForcingSpec::Kind k) {
    switch (k) {
        case ForcingSpec::Kind::none: return "none";
        case ForcingSpec::Kind::steady_modes: return "steady_modes";
        case ForcingSpec::Kind::time_periodic: return "time_periodic";
    }
    return "none";
}

const char* kind_name(InitialSpec::Kind k) {
    switch (k) {
        case InitialSpec::Kind::zero: return "zero";
        case InitialSpec::Kind::beltrami: return "beltrami";
        case InitialSpec::Kind::taylor_green: return "taylor_green";
        case InitialSpec::Kind::random: return "random";
        case InitialSpec::Kind::file: return "file";
    }
    return "zero";
}

ForcingSpec::Kind forcing_kind(const std::string& s) {
    if (s == "none") return ForcingSpec::Kind::none;
    if (s == "steady_modes") return ForcingSpec::Kind::steady_modes;
    if (s == "time_periodic") return ForcingSpec::Kind::time_periodic;
    throw ConfigError("unknown forcing.kind: " + s);
}

InitialSpec::Kind initial_kind(const std::string& s) {
    if (s == "zero") return InitialSpec::Kind::zero;
    if (s == "beltrami") return InitialSpec::Kind::beltrami;
    if (s == "taylor_green") return InitialSpec::Kind::taylor_green;
    if (s == "random") return InitialSpec::Kind::random;
    if (s == "file") return InitialSpec::Kind::file;
    throw ConfigError("unknown initial.kind: " + s);
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad number for " + key + ": '" + value + "'");
    }
}

long parse_integer(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad integer for " + key + ": '" + value + "'");
    }
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_number(key, item));
    }
    return out;
}

ForcingMode parse_forcing_mode(const std::string& value) {
    std::istringstream ss(value);
    std::vector<double> nums;
    double v = 0.0;
    while (ss >> v) nums.push_back(v);
    if (nums.size() != 9)
        throw ConfigError("forcing.mode wants 9 numbers (kx ky kz re_x im_x re_y im_y re_z im_z)");
    ForcingMode m;
    for (int i = 0; i < 3; ++i) {
        m.k[static_cast<std::size_t>(i)] = static_cast<int>(nums[static_cast<std::size_t>(i)]);
        m.amplitude[static_cast<std::size_t>(i)] =
            Complex{nums[3 + 2 * static_cast<std::size_t>(i)],
                    nums[4 + 2 * static_cast<std::size_t>(i)]};
    }
    return m;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "grid.n") cfg.solver.n = static_cast<int>(parse_integer(key, value));
        else if (key == "sim.nu") cfg.solver.nu = parse_number(key, value);
        else if (key == "sim.dt") cfg.solver.dt = parse_number(key, value);
        else if (key == "sim.t_end") cfg.solver.t_end = parse_number(key, value);
        else if (key == "sim.cfl") cfg.solver.cfl = parse_number(key, value);
        else if (key == "sim.snapshot_stride")
            cfg.solver.snapshot_stride = static_cast<int>(parse_integer(key, value));
        else if (key == "sim.budget_stride")
            cfg.solver.budget_stride = static_cast<int>(parse_integer(key, value));
        else if (key == "initial.kind") cfg.solver.initial.kind = initial_kind(value);
        else if (key == "initial.abc") {
            const auto v = parse_list(key, value);
            if (v.size() != 3) throw ConfigError("initial.abc wants three numbers");
            cfg.solver.initial.abc = {v[0], v[1], v[2]};
        } else if (key == "initial.slope") cfg.solver.initial.slope = parse_number(key, value);
        else if (key == "initial.seed")
            cfg.solver.initial.seed = static_cast<std::uint64_t>(parse_integer(key, value));
        else if (key == "initial.amplitude")
            cfg.solver.initial.amplitude = parse_number(key, value);
        else if (key == "initial.path") cfg.solver.initial.path = value;
        else if (key == "forcing.kind") cfg.solver.forcing.kind = forcing_kind(value);
        else if (key == "forcing.frequency")
            cfg.solver.forcing.frequency = parse_number(key, value);
        else if (key == "forcing.mode")
            cfg.solver.forcing.modes.push_back(parse_forcing_mode(value));
        else if (key == "output.dir") cfg.output_dir = value;
        else if (key == "audit.kappas") cfg.kappas = parse_list(key, value);
        else if (key == "audit.windows") {
            cfg.windows.clear();
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) {
                item = trim(item);
                if (item.empty()) continue;
                const auto colon = item.find(':');
                if (colon == std::string::npos)
                    throw ConfigError("audit.windows entries look like t0:t1");
                cfg.windows.emplace_back(parse_number(key, trim(item.substr(0, colon))),
                                         parse_number(key, trim(item.substr(colon + 1))));
            }
        } else {
            throw ConfigError("unknown key: " + key);
        }
    }
    validate(cfg.solver);
    if (!(cfg.solver.nu > 0.0)) throw ConfigError("sim.nu must be > 0");
    if (!(cfg.solver.t_end > 0.0)) throw ConfigError("sim.t_end must be > 0");
    return cfg;
}

RunConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_string(const RunConfig& cfg) {
    std::ostringstream out;
    const SolverConfig& s = cfg.solver;
    out << "grid.n = " << s.n << "\n";
    out << "sim.nu = " << format_double(s.nu) << "\n";
    out << "sim.dt = " << format_double(s.dt) << "\n";
    out << "sim.t_end = " << format_double(s.t_end) << "\n";
    out << "sim.cfl = " << format_double(s.cfl) << "\n";
    out << "sim.snapshot_stride = " << s.snapshot_stride << "\n";
    out << "sim.budget_stride = " << s.budget_stride << "\n";
    out << "initial.kind = " << kind_name(s.initial.kind) << "\n";
    if (s.initial.kind == InitialSpec::Kind::beltrami)
        out << "initial.abc = " << format_double(s.initial.abc[0]) << ","
            << format_double(s.initial.abc[1]) << "," << format_double(s.initial.abc[2]) << "\n";
    if (s.initial.kind == InitialSpec::Kind::random) {
        out << "initial.slope = " << format_double(s.initial.slope) << "\n";
        out << "initial.seed = " << s.initial.seed << "\n";
        out << "initial.amplitude = " << format_double(s.initial.amplitude) << "\n";
    }
    if (s.initial.kind == InitialSpec::Kind::file)
        out << "initial.path = " << s.initial.path << "\n";
    out << "forcing.kind = " << kind_name(s.forcing.kind) << "\n";
    if (s.forcing.kind == ForcingSpec::Kind::time_periodic)
        out << "forcing.frequency = " << format_double(s.forcing.frequency) << "\n";
    for (const ForcingMode& m : s.forcing.modes) {
        out << "forcing.mode = " << m.k[0] << " " << m.k[1] << " " << m.k[2];
        for (int c = 0; c < 3; ++c)
            out << " " << format_double(m.amplitude[static_cast<std::size_t>(c)].real()) << " "
                << format_double(m.amplitude[static_cast<std::size_t>(c)].imag());
        out << "\n";
    }
    out << "output.dir = " << cfg.output_dir << "\n";
    if (!cfg.kappas.empty()) {
        out << "audit.kappas = ";
        for (std::size_t i = 0; i < cfg.kappas.size(); ++i)
            out << format_double(cfg.kappas[i]) << (i + 1 < cfg.kappas.size() ? "," : "\n");
    }
    if (!cfg.windows.empty()) {
        out << "audit.windows = ";
        for (std::size_t i = 0; i < cfg.windows.size(); ++i)
            out << format_double(cfg.windows[i].first) << ":"
                << format_double(cfg.windows[i].second)
                << (i + 1 < cfg.windows.size() ? "," : "\n");
    }
    return out.str();
}

Trajectory simulate_to_dir(const RunConfig& config, const fs::path& dir,
                           std::optional<SpectralField> initial) {
    fs::create_directories(dir / "snapshots");

    // Resolve dt the way simulate() will, so the stored config echoes the
    // exact run parameters.
    RunConfig resolved = config;
    const long nsteps = std::max<long>(1, std::lround(config.solver.t_end / config.solver.dt));
    resolved.solver.dt = config.solver.t_end / static_cast<double>(nsteps);
    resolved.output_dir = dir.string();
    atomic_write(dir / "config.resolved", config_to_string(resolved));

    int counter = 0;
    SnapshotSink sink = [&](int, double t, const SpectralField& field) {
        char name[32];
        std::snprintf(name, sizeof(name), "snap_%06d.snap", counter++);
        const fs::path path = dir / "snapshots" / name;
        write_snapshot(field, t, config.solver.nu, path);
        return std::function<SpectralField()>(
            [path]() { return read_snapshot(path).field; });
    };

    Trajectory traj = simulate(resolved.solver, std::move(initial), sink);

    std::vector<std::vector<double>> rows;
    rows.reserve(traj.budget().size());
    for (const BudgetSample& b : traj.budget())
        rows.push_back({b.t, b.energy_sq, b.enstrophy, b.work_rate});
    write_csv(dir / "budget.csv", {"t", "energy", "enstrophy", "work_rate"}, rows);

    std::ostringstream summary;
    summary << "snapshots = " << traj.snapshot_count() << "\n";
    summary << "budget_samples = " << traj.budget().size() << "\n";
    summary << "final_energy = " << format_double(traj.budget().back().energy_sq) << "\n";
    summary << "max_tail_fraction = " << format_double(traj.diagnostics().max_tail_fraction)
            << "\n";
    summary << "under_resolved = " << (traj.diagnostics().under_resolved ? "true" : "false")
            << "\n";
    atomic_write(dir / "run_summary.txt", summary.str());
    return traj;
}

RunConfig load_run_config(const fs::path& dir) { return load_config(dir / "config.resolved"); }

Trajectory load_run_dir(const fs::path& dir) {
    const RunConfig cfg = load_run_config(dir);
    Grid grid(cfg.solver.n);
    Trajectory traj(grid, cfg.solver.nu);

    {
        std::ifstream in(dir / "budget.csv");
        if (!in) throw IoError("cannot open budget.csv in " + dir.string());
        std::string line;
        if (!std::getline(in, line)) throw IoError("empty budget.csv in " + dir.string());
        if (trim(line) != "t,energy,enstrophy,work_rate")
            throw IoError("unexpected budget.csv header in " + dir.string());
        while (std::getline(in, line)) {
            line = trim(line);
            if (line.empty()) continue;
            std::stringstream ss(line);
            std::string item;
            std::vector<double> vals;
            while (std::getline(ss, item, ',')) vals.push_back(parse_number("budget.csv", item));
            if (vals.size() != 4) throw IoError("malformed budget.csv row in " + dir.string());
            traj.add_budget(BudgetSample{vals[0], vals[1], vals[2], vals[3]});
        }
    }

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir / "snapshots"))
        if (entry.path().extension() == ".snap") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw IoError("no snapshots in " + dir.string());
    for (const fs::path& path : files) {
        const SnapshotData head = read_snapshot(path);  // validates now
        if (!(head.field.grid() == grid))
            throw GridMismatch("snapshot grid differs from run config: " + path.string());
        traj.add_snapshot(head.time, [path]() { return read_snapshot(path).field; });
    }
    return traj;
}

}  // namespace energylab::io
