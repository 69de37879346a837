// kslab: numerical laboratory for a 1-D chemotaxis population model in a
// shifting habitat.  Subcommands: simulate | eig | verify | sweep.

#include "kslab/analysis.hpp"
#include "kslab/config.hpp"
#include "kslab/errors.hpp"
#include "kslab/io.hpp"
#include "kslab/kernels.hpp"
#include "kslab/spectral.hpp"
#include "kslab/sweep.hpp"
#include "kslab/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace kslab;

namespace {

void apply_kernel_choice(const std::string& choice) {
    if (choice == "auto") return;
    kernels::force(choice == "avx2" ? kernels::Backend::Avx2 : kernels::Backend::Scalar);
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir, bool strict,
                 const std::string& frame_override, bool plot) {
    KeyValueFile kv = KeyValueFile::parse_file(config_path);
    if (!frame_override.empty()) kv.set("frame", frame_override);
    const SimConfig cfg = build_sim_config(kv);
    const EnvConstants ec = constants(cfg.env);

    const auto t0 = std::chrono::steady_clock::now();
    const Trajectory traj = run(cfg);

    std::optional<LambdaInfResult> lam;
    if (cfg.env.kind == ProfileKind::Bump && std::fabs(cfg.env.shift_speed) < ec.c_star)
        lam = lambda_infinity(cfg.env.shift_speed, cfg.env, 1e-4);

    const RegimeReport rep = classify(traj, lam);
    const FrontTrajectory fronts =
        track_fronts(traj, cfg.front_level_factor * ec.r_star / cfg.params.b);

    fs::create_directories(out_dir);
    write_snapshots_csv((fs::path(out_dir) / "snapshots.csv").string(), traj);
    write_fronts_csv((fs::path(out_dir) / "fronts.csv").string(), fronts);
    write_report((fs::path(out_dir) / "report.txt").string(), traj, rep);
    if (plot) write_plot_slices((fs::path(out_dir) / "plot").string(), traj);

    Manifest man;
    man.config_echo = config_echo(cfg);
    man.frame = cfg.frame == Frame::Lab ? "lab" : "comoving";
    man.kernel_backend = kernels::name(kernels::active());
    man.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    man.output_files = {"snapshots.csv", "fronts.csv", "report.txt"};
    for (const auto& w : traj.warnings) man.notes.push_back("warning: " + w);
    man.write(out_dir);

    std::cout << "classification: " << regime_name(rep.classification) << "\n";
    if (rep.left_speed) std::cout << "left_speed: " << *rep.left_speed << "\n";
    if (rep.right_speed) std::cout << "right_speed: " << *rep.right_speed << "\n";
    if (rep.wake_level) std::cout << "wake_level: " << *rep.wake_level << "\n";
    std::cout << "outputs in " << out_dir << "\n";

    if (strict && rep.classification == Regime::Indeterminate) return 3;
    return 0;
}

int cmd_eig(double c, double L, bool to_infinity, double tol, std::size_t n,
            const std::string& r_const, const KeyValueFile& env_kv,
            const std::string& phi_out) {
    EnvironmentProfile env;
    if (!r_const.empty()) {
        try {
            env = EnvironmentProfile::constant(std::stod(r_const), c);
        } catch (const std::logic_error&) {
            throw ConfigError("cannot parse --r-const value '" + r_const + "'");
        }
    } else {
        // reuse the scenario builder for the profile; fill grid keys only if
        // the config is profile-only
        KeyValueFile kv = env_kv;
        if (!kv.has("grid.x_min")) kv.set("grid.x_min", "-1");
        if (!kv.has("grid.x_max")) kv.set("grid.x_max", "1");
        if (!kv.has("grid.n") && !kv.has("grid.h")) kv.set("grid.n", "3");
        env = build_sim_config(kv).env;
    }

    if (to_infinity) {
        const LambdaInfResult res = lambda_infinity(c, env, tol);
        std::cout << "lambda_inf = " << res.lambda_inf << "\n";
        std::cout << "L_used = " << res.L_used << "\n";
        std::cout << "doublings:";
        for (const auto& [Lk, lk] : res.history) std::cout << " (" << Lk << ", " << lk << ")";
        std::cout << "\n";
        if (res.indeterminate())
            std::cout << "sign: indeterminate (|lambda_inf| < 2 tol)\n";
        else
            std::cout << "sign: " << (res.lambda_inf > 0 ? "+" : "-") << "\n";
        return 0;
    }

    SpectralProblem prob{c, env, L, n};
    const SpectralResult res = principal_eig(prob);
    std::cout << "lambda_L = " << res.lambda_L << "\n";
    std::cout << "L = " << res.L << "\n";
    std::cout << "residual = " << res.residual << "\n";
    if (!phi_out.empty()) {
        write_eigenfunction_csv(phi_out, res);
        std::cout << "eigenfunction written to " << phi_out << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& suite) {
    const auto results = run_verify_suite(suite);
    bool all = true;
    for (const auto& r : results) {
        std::cout << format_check_line(r) << "\n";
        all = all && r.pass;
    }
    std::cout << (all ? "suite passed" : "suite FAILED") << "\n";
    return all ? 0 : 1;
}

int cmd_sweep(const std::string& spec_path, const std::string& out_dir, std::size_t jobs) {
    const SweepSpec spec = parse_sweep_spec(spec_path);
    const SweepOutcome outcome = run_sweep(spec, out_dir, jobs);
    std::size_t matched = 0, failed = 0;
    for (const auto& cell : outcome.cells) {
        matched += cell.ok ? 1 : 0;
        failed += cell.failed ? 1 : 0;
    }
    std::cout << outcome.cells.size() << " cells, " << matched << " matched/accounted, "
              << failed << " failed; summary in " << out_dir << "/summary.csv\n";
    return outcome.all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"1-D chemotaxis population dynamics in shifting habitats"};
    app.require_subcommand(1);

    std::string kernel_choice = "auto";
    app.add_option("--kernels", kernel_choice, "kernel backend: auto | scalar | avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

    // simulate
    auto* sim = app.add_subcommand("simulate", "run one scenario and classify the outcome");
    std::string config_path, out_dir = "out", frame_override;
    bool strict = false, plot = false;
    sim->add_option("--config", config_path, "scenario config file")->required();
    sim->add_option("--out", out_dir, "output directory");
    sim->add_flag("--strict", strict, "exit 3 when the classification is Indeterminate");
    sim->add_option("--frame", frame_override, "override frame: lab | comoving")
        ->check(CLI::IsMember({"lab", "comoving"}));
    sim->add_flag("--plot", plot, "also write gnuplot-ready per-snapshot slices");

    // eig
    auto* eig = app.add_subcommand("eig", "principal eigenvalue of the habitat operator");
    double c = 0.0, L = 10.0, tol = 1e-4;
    std::size_t n_eig = 2047;
    bool to_infinity = false;
    std::string r_const, phi_out, eig_config;
    eig->add_option("--c", c, "advection speed (habitat shift speed)");
    eig->add_option("--L", L, "interval half-width");
    eig->add_option("--n", n_eig, "interior nodes");
    eig->add_flag("--to-infinity", to_infinity, "double L until lambda_L converges");
    eig->add_option("--tol", tol, "convergence tolerance for --to-infinity");
    eig->add_option("--r-const", r_const, "constant growth rate profile");
    eig->add_option("--config", eig_config, "read the profile from a scenario config");
    eig->add_option("--phi-out", phi_out, "write the eigenfunction CSV here");

    // verify
    auto* ver = app.add_subcommand("verify", "run a named acceptance suite");
    std::string suite;
    ver->add_option("suite", suite, "kernel | spectral | fisher | case1 | case2 | bounds")
        ->required();

    // sweep
    auto* swp = app.add_subcommand("sweep", "cross-product parameter sweep");
    std::string spec_path, sweep_out = "sweep_out";
    std::size_t jobs = 1;
    swp->add_option("--spec", spec_path, "sweep spec file")->required();
    swp->add_option("--out", sweep_out, "output directory");
    swp->add_option("--jobs", jobs, "worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        apply_kernel_choice(kernel_choice);
        if (sim->parsed()) return cmd_simulate(config_path, out_dir, strict, frame_override, plot);
        if (eig->parsed()) {
            KeyValueFile env_kv;
            if (!eig_config.empty())
                env_kv = KeyValueFile::parse_file(eig_config);
            else if (r_const.empty())
                throw ConfigError("eig needs either --r-const or --config");
            return cmd_eig(c, L, to_infinity, tol, n_eig, r_const, env_kv, phi_out);
        }
        if (ver->parsed()) return cmd_verify(suite);
        if (swp->parsed()) return cmd_sweep(spec_path, sweep_out, jobs);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
