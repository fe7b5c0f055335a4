#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "energylab/check_suites.hpp"
#include "energylab/cli.hpp"
#include "energylab/io.hpp"

using namespace energylab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("energylab_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("classify exit codes and flags") {
    CHECK(run_cli({"energylab", "classify", "--r", "4", "--s", "4"}) == 0);
    CHECK(run_cli({"energylab", "classify", "--r", "3", "--s", "4.5"}) == 0);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli({"energylab"}) == 2);
    CHECK(run_cli({"energylab", "frobnicate"}) == 2);
    CHECK(run_cli({"energylab", "classify", "--bogus", "1"}) == 2);
    CHECK(run_cli({"energylab", "simulate"}) == 2);
    CHECK(run_cli({"energylab", "check", "--suite", "nonsense"}) == 2);
}

TEST_CASE("check suite output is deterministic") {
    std::ostringstream a, b;
    const int ra = run_identities_suite(7, a);
    const int rb = run_identities_suite(7, b);
    CHECK(ra == 0);
    CHECK(rb == 0);
    CHECK(a.str() == b.str());
    CHECK(a.str().find("suite identities: all checks passed") != std::string::npos);

    std::ostringstream c;
    run_identities_suite(8, c);
    CHECK(a.str() != c.str());
}

TEST_CASE("simulate + audit + spectrum end-to-end") {
    TempDir tmp;
    const fs::path run_dir = tmp.path / "run";
    const fs::path config = tmp.path / "config";
    {
        std::ofstream out(config);
        out << "grid.n = 16\n"
            << "sim.nu = 0.1\n"
            << "sim.dt = 0.0025\n"
            << "sim.t_end = 0.1\n"
            << "sim.snapshot_stride = 5\n"
            << "initial.kind = taylor_green\n"
            << "output.dir = " << run_dir.string() << "\n";
    }
    CHECK(run_cli({"energylab", "simulate", "--config", config.string()}) == 0);
    CHECK(fs::exists(run_dir / "budget.csv"));
    CHECK(fs::exists(run_dir / "config.resolved"));
    CHECK(fs::exists(run_dir / "run_summary.txt"));

    CHECK(run_cli({"energylab", "audit", "--run-dir", run_dir.string(), "--kappas",
                   "1,4,9,25"}) == 0);
    CHECK(fs::exists(run_dir / "defect_report.csv"));
    CHECK(fs::exists(run_dir / "regularity.csv"));
    CHECK(fs::exists(run_dir / "audit_summary.txt"));
    {
        std::ifstream in(run_dir / "audit_summary.txt");
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        CHECK(text.find("theorem_pass = true") != std::string::npos);
        CHECK(text.find("majorant_ok = true") != std::string::npos);
    }

    // First snapshot has only the |k|^2 = 3 shell.
    const fs::path snap = run_dir / "snapshots" / "snap_000000.snap";
    const fs::path spec_csv = tmp.path / "spec.csv";
    CHECK(run_cli({"energylab", "spectrum", "--snapshot", snap.string(), "--out",
                   spec_csv.string()}) == 0);
    std::ifstream in(spec_csv);
    std::string header, row1, row2;
    std::getline(in, header);
    std::getline(in, row1);
    std::getline(in, row2);
    CHECK(header == "shell,energy");
    CHECK(row1.substr(0, 2) == "1,");
    CHECK(std::stod(row1.substr(2)) == 0.0);   // shell 1 empty
    CHECK(std::stod(row2.substr(2)) > 0.0);    // shell 2 holds |k|^2 = 3
}

TEST_CASE("config echo idempotence through the run dir") {
    TempDir tmp;
    const fs::path run_dir = tmp.path / "run";
    io::RunConfig cfg;
    cfg.solver.n = 8;
    cfg.solver.nu = 0.1;
    cfg.solver.dt = 1e-2;
    cfg.solver.t_end = 0.03;
    cfg.solver.initial.kind = InitialSpec::Kind::beltrami;
    cfg.output_dir = run_dir.string();
    io::simulate_to_dir(cfg, run_dir);

    const io::RunConfig first = io::load_run_config(run_dir);
    const std::string echo1 = io::config_to_string(first);
    const io::RunConfig second = io::parse_config(echo1);
    CHECK(io::config_to_string(second) == echo1);
}
