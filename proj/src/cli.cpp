#include "energylab/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "energylab/audit.hpp"
#include "energylab/check_suites.hpp"
#include "energylab/io.hpp"
#include "energylab/spectral_ops.hpp"

namespace energylab {

namespace fs = std::filesystem;

namespace {

std::vector<double> default_kappa_ladder(const Grid& grid) {
    std::vector<double> ladder;
    for (double k = 1.0; k < grid.lambda_max(); k *= 4.0) ladder.push_back(k);
    ladder.push_back(grid.lambda_max());
    return ladder;
}

int cmd_simulate(const std::string& config_path) {
    io::RunConfig cfg = io::load_config(config_path);
    const fs::path dir = cfg.output_dir;
    std::optional<SpectralField> initial;
    if (cfg.solver.initial.kind == InitialSpec::Kind::file) {
        io::SnapshotData snap = io::read_snapshot(cfg.solver.initial.path);
        if (snap.field.grid().n() != cfg.solver.n)
            throw io::GridMismatch("initial snapshot grid n=" +
                                   std::to_string(snap.field.grid().n()) +
                                   " differs from grid.n=" + std::to_string(cfg.solver.n));
        initial = std::move(snap.field);
    }
    io::simulate_to_dir(cfg, dir, std::move(initial));
    std::cout << "run written to " << dir.string() << "\n";
    return 0;
}

int cmd_audit(const std::string& run_dir, std::vector<double> kappas,
              std::optional<double> t0, std::optional<double> t1) {
    const Trajectory traj = io::load_run_dir(run_dir);
    const io::RunConfig cfg = io::load_run_config(run_dir);

    if (kappas.empty()) kappas = cfg.kappas;
    if (kappas.empty()) kappas = default_kappa_ladder(traj.grid());

    std::vector<std::pair<double, double>> windows = cfg.windows;
    if (t0.has_value() != t1.has_value())
        throw CLI::ValidationError("--t0 and --t must be given together");
    if (t0.has_value()) windows.emplace_back(*t0, *t1);
    if (windows.empty()) windows.emplace_back(traj.t_begin(), traj.t_end());

    const DefectReport defects = flux_convergence(traj, kappas, windows);
    const RegularityReport reg = regularity_norms(traj);
    const TheoremVerdict verdict = theorem_check(traj);

    const fs::path dir = run_dir;
    {
        std::vector<std::vector<double>> rows;
        for (const DefectRow& r : defects.rows)
            rows.push_back({r.t0, r.t, r.kappa, r.ee, r.lemma, r.flux_integral, r.hh_integral,
                            r.lh_integral});
        io::write_csv(dir / "defect_report.csv",
                      {"t0", "t", "kappa", "ee_defect", "lemma_defect", "flux_integral",
                       "hh_integral", "lh_integral"},
                      rows);
    }
    {
        std::vector<std::vector<double>> rows;
        for (const LrLsRow& r : reg.lrls_table)
            rows.push_back({r.r, r.s, r.norm, r.satisfies_serrin ? 1.0 : 0.0,
                            r.satisfies_shinbrot ? 1.0 : 0.0, r.new_scaling_value,
                            r.on_new_scaling ? 1.0 : 0.0});
        io::write_csv(dir / "regularity.csv",
                      {"r", "s", "norm", "serrin", "shinbrot", "new_scaling_value",
                       "on_new_scaling"},
                      rows);
    }

    std::ostringstream summary;
    summary << "l3_v56 = " << io::format_double(reg.l3_v56) << "\n";
    summary << "sup_l2 = " << io::format_double(reg.sup_l2) << "\n";
    summary << "l2_h1 = " << io::format_double(reg.l2_h1) << "\n";
    summary << "ee_defect = " << io::format_double(verdict.defect) << "\n";
    summary << "sei_min_margin = " << io::format_double(min_sei_margin(traj)) << "\n";
    summary << "defect_tolerance = " << io::format_double(verdict.tolerance) << "\n";
    summary << "majorant_constant = " << io::format_double(defects.majorant_constant) << "\n";
    summary << "majorant_max_ratio = " << io::format_double(defects.majorant_max_ratio) << "\n";
    summary << "majorant_ok = " << (defects.majorant_ok ? "true" : "false") << "\n";
    summary << "theorem_pass = " << (verdict.pass ? "true" : "false") << "\n";
    std::ofstream(dir / "audit_summary.txt") << summary.str();
    std::cout << summary.str();

    return (verdict.pass && defects.majorant_ok) ? 0 : 1;
}

int cmd_spectrum(const std::string& snapshot_path, const std::string& out_path) {
    const io::SnapshotData snap = io::read_snapshot(snapshot_path);
    const std::vector<double> shells = shell_spectrum(snap.field);
    std::vector<std::vector<double>> rows;
    for (std::size_t m = 1; m < shells.size(); ++m)
        rows.push_back({static_cast<double>(m), shells[m]});
    if (out_path.empty()) {
        std::cout << "shell,energy\n";
        for (const auto& r : rows)
            std::cout << r[0] << "," << io::format_double(r[1]) << "\n";
    } else {
        io::write_csv(out_path, {"shell", "energy"}, rows);
    }
    return 0;
}

int cmd_classify(double r, double s) {
    const LrLsRow row = classify_pair(r, s);
    std::cout << "r = " << io::format_double(r) << "\n";
    std::cout << "s = " << io::format_double(s) << "\n";
    std::cout << "serrin = " << (row.satisfies_serrin ? "true" : "false") << "\n";
    std::cout << "shinbrot = " << (row.satisfies_shinbrot ? "true" : "false") << "\n";
    std::cout << "new_scaling_value = " << io::format_double(row.new_scaling_value) << "\n";
    std::cout << "on_new_scaling = " << (row.on_new_scaling ? "true" : "false") << "\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{
        "energylab: pseudo-spectral Navier-Stokes on the periodic box with an "
        "energy-audit toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    auto* sim = app.add_subcommand(
        "simulate",
        "integrate a configured run to a run directory: config.resolved, "
        "snapshots/, run_summary.txt and budget.csv (t,energy,enstrophy,work_rate)");
    sim->add_option("--config", config_path, "configuration file (key = value lines)")
        ->required();

    std::string run_dir;
    std::vector<double> kappas;
    std::optional<double> t0, t1;
    auto* audit = app.add_subcommand(
        "audit",
        "energy-equality audit of a run directory; writes defect_report.csv "
        "(t0,t,kappa,ee_defect,lemma_defect,flux_integral,hh_integral,lh_integral), "
        "regularity.csv (r,s,norm,serrin,shinbrot,new_scaling_value,on_new_scaling) "
        "and audit_summary.txt");
    audit->add_option("--run-dir", run_dir, "run directory produced by simulate")->required();
    audit->add_option("--kappas", kappas, "increasing cutoff ladder")->delimiter(',');
    audit->add_option("--t0", t0, "window start (snapped to sample times)");
    audit->add_option("--t", t1, "window end");

    std::string suite;
    std::uint64_t seed = 1;
    auto* check = app.add_subcommand("check", "run a property suite; nonzero exit on failure");
    check->add_option("--suite", suite, "identities | estimates | exact-solutions")->required();
    check->add_option("--seed", seed, "ensemble seed");

    std::string snapshot_path, spectrum_out;
    auto* spectrum =
        app.add_subcommand("spectrum", "shell-energy table (shell,energy) of a snapshot");
    spectrum->add_option("--snapshot", snapshot_path, "snapshot file")->required();
    spectrum->add_option("--out", spectrum_out, "output CSV (default: stdout)");

    double cls_r = 0.0, cls_s = 0.0;
    auto* classify =
        app.add_subcommand("classify", "Serrin / Shinbrot / new-scaling flags for (r, s)");
    classify->add_option("--r", cls_r, "temporal exponent (0 = infinity)")->required();
    classify->add_option("--s", cls_s, "spatial exponent")->required();

    std::vector<std::string> argv_like = args;
    try {
        std::vector<const char*> argv;
        argv.reserve(argv_like.size());
        for (const auto& a : argv_like) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (sim->parsed()) return cmd_simulate(config_path);
        if (audit->parsed()) return cmd_audit(run_dir, kappas, t0, t1);
        if (check->parsed()) {
            const int failures = run_suite(suite, seed, std::cout);
            return failures == 0 ? 0 : 1;
        }
        if (spectrum->parsed()) return cmd_spectrum(snapshot_path, spectrum_out);
        if (classify->parsed()) return cmd_classify(cls_r, cls_s);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc));
    for (int i = 0; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args);
}

}  // namespace energylab
