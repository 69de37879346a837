#include "kslab/sweep.hpp"

#include "kslab/errors.hpp"
#include "kslab/io.hpp"
#include "kslab/kernels.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace kslab {

namespace fs = std::filesystem;

SweepSpec parse_sweep_spec(const std::string& path) {
    const KeyValueFile raw = KeyValueFile::parse_file(path);
    SweepSpec spec;
    spec.scenario = raw;
    for (const auto& [key, value] : raw.values) {
        if (key.rfind("axis.", 0) == 0) {
            const std::string target = key.substr(5);
            std::vector<std::string> vals;
            std::istringstream is(value);
            std::string tok;
            while (is >> tok) vals.push_back(tok);
            if (vals.empty()) throw ConfigError("axis '" + key + "' has no values");
            spec.axes.emplace_back(target, vals);
            spec.scenario.consumed[key] = true;
        }
    }
    spec.cap = spec.scenario.get_size("cap", 256);
    spec.lambda_tol = spec.scenario.get_double("lambda_tol", 1e-4);
    // Drop meta keys from the scenario template
    spec.scenario.values.erase("cap");
    spec.scenario.values.erase("lambda_tol");
    for (const auto& [axis_key, _] : spec.axes) spec.scenario.values.erase("axis." + axis_key);
    return spec;
}

namespace {

std::size_t product_size(const SweepSpec& spec) {
    std::size_t n = 1;
    for (const auto& [_, vals] : spec.axes) n *= vals.size();
    return n;
}

void run_cell(const SweepSpec& spec, std::size_t index, const std::string& out_dir,
              SweepCell& cell) {
    cell.index = index;
    const auto t0 = std::chrono::steady_clock::now();

    KeyValueFile kv = spec.scenario;
    std::size_t rem = index;
    for (const auto& [key, vals] : spec.axes) {
        const std::size_t i = rem % vals.size();
        rem /= vals.size();
        kv.set(key, vals[i]);
        cell.axis_values.emplace_back(key, vals[i]);
    }

    std::ostringstream dirname;
    dirname << "cell_" << index;
    const fs::path cell_dir = fs::path(out_dir) / dirname.str();

    try {
        const SimConfig cfg = build_sim_config(kv);
        const EnvConstants ec = constants(cfg.env);

        std::optional<LambdaInfResult> lam;
        if (cfg.env.kind == ProfileKind::Bump &&
            std::fabs(cfg.env.shift_speed) < ec.c_star)
            lam = lambda_infinity(cfg.env.shift_speed, cfg.env, spec.lambda_tol);

        const Trajectory traj = run(cfg);
        const RegimeReport rep = classify(traj, lam);

        std::string clause;
        const Regime predicted = predict_regime(cfg, lam, clause);
        cell.predicted = regime_name(predicted);
        cell.measured = regime_name(rep.classification);
        cell.clause = clause;

        std::string reason;
        for (const auto& [k, v] : rep.diagnostics)
            if (k == "indeterminate_reason") reason = v;
        cell.ok = cell.measured == cell.predicted ||
                  (rep.classification == Regime::Indeterminate && !reason.empty());
        cell.detail = reason;

        fs::create_directories(cell_dir);
        const FrontTrajectory fronts =
            track_fronts(traj, cfg.front_level_factor * ec.r_star / cfg.params.b);
        write_fronts_csv((cell_dir / "fronts.csv").string(), fronts);
        write_report((cell_dir / "report.txt").string(), traj, rep);

        Manifest man;
        man.config_echo = config_echo(cfg);
        man.frame = cfg.frame == Frame::Lab ? "lab" : "comoving";
        man.kernel_backend = kernels::name(kernels::active());
        man.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        man.output_files = {"fronts.csv", "report.txt"};
        if (lam) man.notes.push_back("lambda_inf = " + std::to_string(lam->lambda_inf));
        man.notes.push_back("clause: " + clause);
        man.write(cell_dir.string());
    } catch (const std::exception& e) {
        cell.failed = true;
        cell.ok = false;
        cell.detail = e.what();
    }
}

} // namespace

SweepOutcome run_sweep(const SweepSpec& spec, const std::string& out_dir, std::size_t jobs) {
    const std::size_t n_cells = product_size(spec);
    if (n_cells > spec.cap)
        throw ConfigError("sweep has " + std::to_string(n_cells) + " cells, cap is " +
                          std::to_string(spec.cap));
    fs::create_directories(out_dir);

    SweepOutcome outcome;
    outcome.cells.resize(n_cells);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n_cells) break;
            run_cell(spec, i, out_dir, outcome.cells[i]);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::ofstream sum(fs::path(out_dir) / "summary.csv");
    if (!sum) throw NumericError("cannot write summary.csv");
    sum << "index";
    for (const auto& [key, _] : spec.axes) sum << ',' << key;
    sum << ",predicted,measured,match,clause,detail\n";
    outcome.all_ok = true;
    for (const SweepCell& cell : outcome.cells) {
        sum << cell.index;
        for (const auto& [_, v] : cell.axis_values) sum << ',' << v;
        sum << ',' << cell.predicted << ',' << cell.measured << ','
            << (cell.ok ? "yes" : "no") << ',' << '"' << cell.clause << '"' << ',' << '"'
            << cell.detail << '"' << '\n';
        outcome.all_ok = outcome.all_ok && cell.ok && !cell.failed;
    }
    return outcome;
}

} // namespace kslab
