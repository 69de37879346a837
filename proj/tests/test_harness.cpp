#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kslab/config.hpp"
#include "kslab/errors.hpp"
#include "kslab/io.hpp"
#include "kslab/sweep.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace kslab;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("kslab_test_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args, const fs::path& stdout_file) {
    const std::string cmd = std::string(KSLAB_CLI_PATH) + " " + args + " > " +
                            stdout_file.string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

const char* kMinimalConfig = R"(# steady-state scenario
env.kind = constant
env.r_peak = 1.0
grid.x_min = -10
grid.x_max = 10
grid.h = 0.2
t_end = 2.0
snapshots = 6
u0.kind = constant
u0.amplitude = 1.0
)";

} // namespace

TEST_CASE("key=value parsing with comments and errors") {
    const auto kv = KeyValueFile::parse_text("a = 1 # trailing\n# full comment\n b.c = x\n", "t");
    CHECK(kv.values.at("a") == "1");
    CHECK(kv.values.at("b.c") == "x");

    CHECK_THROWS_AS(KeyValueFile::parse_text("nonsense\n", "t"), ConfigError);
    CHECK_THROWS_AS(KeyValueFile::parse_text("a=1\na=2\n", "t"), ConfigError);
    try {
        KeyValueFile::parse_text("x = 1\nbroken line\n", "cfg");
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("cfg:2") != std::string::npos);
    }
}

TEST_CASE("config builder rejects unknown keys and bad values") {
    auto kv = KeyValueFile::parse_text(kMinimalConfig, "t");
    CHECK_NOTHROW(build_sim_config(kv));

    kv = KeyValueFile::parse_text(std::string(kMinimalConfig) + "mystery = 1\n", "t");
    CHECK_THROWS_AS(build_sim_config(kv), ConfigError);

    kv = KeyValueFile::parse_text(std::string(kMinimalConfig) + "cfl_safety = 1.5\n", "t");
    CHECK_THROWS_AS(build_sim_config(kv), ConfigError);

    kv = KeyValueFile::parse_text("env.kind = tanh\ngrid.x_min = 0\ngrid.x_max = 1\n", "t");
    CHECK_THROWS_AS(build_sim_config(kv), ConfigError); // missing r_minus/r_plus
}

TEST_CASE("config echo re-parses to the same echo") {
    const auto kv = KeyValueFile::parse_text(kMinimalConfig, "t");
    const SimConfig cfg = build_sim_config(kv);
    const std::string echo = config_echo(cfg);
    const SimConfig cfg2 = build_sim_config(KeyValueFile::parse_text(echo, "echo"));
    CHECK(config_echo(cfg2) == echo);
}

TEST_CASE("cli simulate writes outputs and exits 0 on a steady state") {
    const fs::path dir = temp_dir("simulate");
    write_file(dir / "cfg.txt", kMinimalConfig);
    const int rc = run_cli("simulate --config " + (dir / "cfg.txt").string() + " --out " +
                               (dir / "out").string(),
                           dir / "stdout.txt");
    CHECK(rc == 0);
    CHECK(fs::exists(dir / "out" / "snapshots.csv"));
    CHECK(fs::exists(dir / "out" / "fronts.csv"));
    CHECK(fs::exists(dir / "out" / "report.txt"));
    CHECK(fs::exists(dir / "out" / "manifest.txt"));
    const std::string report = read_file(dir / "out" / "report.txt");
    CHECK(report.find("classification:") != std::string::npos);
}

TEST_CASE("cli simulate is bit-identical across reruns") {
    const fs::path dir = temp_dir("determinism");
    write_file(dir / "cfg.txt", kMinimalConfig);
    REQUIRE(run_cli("simulate --config " + (dir / "cfg.txt").string() + " --out " +
                        (dir / "a").string(),
                    dir / "s1.txt") == 0);
    REQUIRE(run_cli("simulate --config " + (dir / "cfg.txt").string() + " --out " +
                        (dir / "b").string(),
                    dir / "s2.txt") == 0);
    CHECK(read_file(dir / "a" / "snapshots.csv") == read_file(dir / "b" / "snapshots.csv"));
    CHECK(read_file(dir / "a" / "fronts.csv") == read_file(dir / "b" / "fronts.csv"));
}

TEST_CASE("cli rejects malformed configs with exit 1 and a line number") {
    const fs::path dir = temp_dir("badcfg");
    write_file(dir / "bad.txt", "env.kind = constant\nbroken line here\n");
    const int rc = run_cli("simulate --config " + (dir / "bad.txt").string() + " --out " +
                               (dir / "out").string(),
                           dir / "stdout.txt");
    CHECK(rc == 1);
    const std::string msg = read_file(dir / "stdout.txt");
    CHECK(msg.find(":2") != std::string::npos);
}

TEST_CASE("cli eig reproduces the closed-form eigenvalues") {
    const fs::path dir = temp_dir("eig");
    int rc = run_cli("eig --r-const 1 --c 0 --L 3.14159265 --n 2047", dir / "out1.txt");
    CHECK(rc == 0);
    std::string out = read_file(dir / "out1.txt");
    CHECK(out.find("lambda_L = 0.75") != std::string::npos);

    rc = run_cli("eig --r-const 1 --c 2 --L 3.14159265 --n 2047", dir / "out2.txt");
    CHECK(rc == 0);
    out = read_file(dir / "out2.txt");
    CHECK(out.find("lambda_L = -0.25") != std::string::npos);

    rc = run_cli("eig --to-infinity --r-const 1 --c 0 --phi-out /dev/null", dir / "out3.txt");
    CHECK(rc == 0);
    out = read_file(dir / "out3.txt");
    CHECK(out.find("lambda_inf = 0.999") != std::string::npos);

    rc = run_cli("eig --c 0 --L 3", dir / "out4.txt");
    CHECK(rc == 1); // neither --r-const nor --config
}

TEST_CASE("sweep runs the cross product and writes one summary row per cell") {
    const fs::path dir = temp_dir("sweep");
    write_file(dir / "spec.txt", R"(
env.kind = tanh
env.r_minus = -1
env.r_plus = 1
env.width = 2
chi = 0.2
nu = 1
mu = 1
b = 1
grid.x_min = -80
grid.x_max = 130
grid.h = 0.1
t_end = 40
snapshots = 41
u0.kind = compact_bump
u0.amplitude = 1
u0.support_lo = -5
u0.support_hi = 5
axis.env.shift_speed = 0.5 3.0
cap = 8
)");
    const SweepSpec spec = parse_sweep_spec((dir / "spec.txt").string());
    const SweepOutcome outcome = run_sweep(spec, (dir / "out").string(), 2);
    CHECK(outcome.cells.size() == 2);
    CHECK(outcome.all_ok);
    CHECK(outcome.cells[0].predicted == "SpreadAlongShift");
    CHECK(outcome.cells[0].measured == "SpreadAlongShift");
    CHECK(outcome.cells[1].predicted == "Extinction");
    CHECK(outcome.cells[1].measured == "Extinction");

    const std::string summary = read_file(dir / "out" / "summary.csv");
    std::size_t rows = 0;
    for (char ch : summary)
        if (ch == '\n') ++rows;
    CHECK(rows == 3); // header + 2 cells
    CHECK(fs::exists(dir / "out" / "cell_0" / "manifest.txt"));
    CHECK(fs::exists(dir / "out" / "cell_1" / "fronts.csv"));

    write_file(dir / "empty_axis.txt", "env.kind = constant\nenv.r_peak = 1\ngrid.x_min = -10\n"
                                       "grid.x_max = 10\ngrid.h = 0.5\nt_end = 1\n"
                                       "u0.kind = constant\nu0.amplitude = 1\n");
    const SweepSpec single = parse_sweep_spec((dir / "empty_axis.txt").string());
    const SweepOutcome one = run_sweep(single, (dir / "single").string(), 1);
    CHECK(one.cells.size() == 1); // no axes: one cell, same as simulate
}

TEST_CASE("sweep cap bounds the cross product") {
    const fs::path dir = temp_dir("sweepcap");
    write_file(dir / "spec.txt", "env.kind = constant\nenv.r_peak = 1\ngrid.x_min = -10\n"
                                 "grid.x_max = 10\ngrid.h = 0.5\nt_end = 1\n"
                                 "u0.kind = constant\nu0.amplitude = 1\n"
                                 "axis.chi = 0 0.1 0.2\naxis.b = 1 2 3\ncap = 4\n");
    const SweepSpec spec = parse_sweep_spec((dir / "spec.txt").string());
    CHECK_THROWS_AS(run_sweep(spec, (dir / "out").string(), 1), ConfigError);
}

TEST_CASE("manifest checksums change when outputs change") {
    const fs::path dir = temp_dir("manifest");
    write_file(dir / "f.csv", "a,b\n1,2\n");
    const std::string c1 = file_checksum((dir / "f.csv").string());
    write_file(dir / "f.csv", "a,b\n1,3\n");
    const std::string c2 = file_checksum((dir / "f.csv").string());
    CHECK(c1 != c2);

    Manifest man;
    man.config_echo = "x = 1\n";
    man.frame = "lab";
    man.kernel_backend = "scalar";
    man.output_files = {"f.csv"};
    CHECK_NOTHROW(man.write(dir.string()));
    man.output_files = {"missing.csv"};
    CHECK_THROWS(man.write(dir.string()));
}
