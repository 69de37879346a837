#include "kslab/io.hpp"

#include "kslab/errors.hpp"
#include "kslab/kernels.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace kslab {

namespace fs = std::filesystem;

std::string file_checksum(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NumericError("checksum: cannot open " + path);
    std::uint64_t hash = 1469598103934665603ull;
    char buf[4096];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 1099511628211ull;
        }
        if (!in) break;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << hash;
    return os.str();
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw NumericError("cannot open output file: " + path);
    out.precision(12);
    return out;
}

} // namespace

void write_snapshots_csv(const std::string& path, const Trajectory& traj) {
    auto out = open_out(path);
    out << "t,x,u,v\n";
    for (const SimState& s : traj.snapshots) {
        for (std::size_t i = 0; i < s.u.size(); ++i)
            out << s.t << ',' << s.u.grid.node(i) << ',' << s.u[i] << ',' << s.v[i] << '\n';
    }
}

void write_fronts_csv(const std::string& path, const FrontTrajectory& fronts) {
    auto out = open_out(path);
    out << "t,left,right\n";
    for (std::size_t k = 0; k < fronts.times.size(); ++k) {
        out << fronts.times[k] << ',';
        if (fronts.left_front[k]) out << *fronts.left_front[k];
        out << ',';
        if (fronts.right_front[k]) out << *fronts.right_front[k];
        out << '\n';
    }
}

void write_eigenfunction_csv(const std::string& path, const SpectralResult& result) {
    auto out = open_out(path);
    out << "x,phi\n";
    for (std::size_t i = 0; i < result.phi.size(); ++i)
        out << result.phi.grid.node(i) << ',' << result.phi[i] << '\n';
}

void write_plot_slices(const std::string& dir, const Trajectory& traj) {
    fs::create_directories(dir);
    int idx = 0;
    for (const SimState& s : traj.snapshots) {
        char name[32];
        std::snprintf(name, sizeof name, "snap_%04d.dat", idx++);
        auto out = open_out((fs::path(dir) / name).string());
        out << "# t = " << s.t << "\n# x u v\n";
        for (std::size_t i = 0; i < s.u.size(); ++i)
            out << s.u.grid.node(i) << ' ' << s.u[i] << ' ' << s.v[i] << '\n';
    }
}

void write_report(const std::string& path, const Trajectory& traj, const RegimeReport& report) {
    auto out = open_out(path);
    out << "classification: " << regime_name(report.classification) << "\n";
    if (report.left_speed) out << "left_speed: " << *report.left_speed << "\n";
    if (report.right_speed) out << "right_speed: " << *report.right_speed << "\n";
    if (report.wake_level) out << "wake_level: " << *report.wake_level << "\n";
    out << "steps: " << traj.n_steps << "\n";
    out << "sup_max_u: " << traj.sup_max_u << "\n";
    out << "apriori_bound: " << traj.apriori_bound << "\n";
    out << "\ndiagnostics:\n";
    for (const auto& [k, v] : report.diagnostics) out << "  " << k << ": " << v << "\n";
    if (!traj.warnings.empty()) {
        out << "\nwarnings:\n";
        for (const auto& w : traj.warnings) out << "  " << w << "\n";
    }
}

void Manifest::write(const std::string& dir, const std::string& filename) const {
    fs::create_directories(dir);
    auto out = open_out((fs::path(dir) / filename).string());
    out << "version = " << code_version << "\n";
    out << "frame = " << frame << "\n";
    out << "kernel_backend = " << kernel_backend << "\n";
    out << "wall_seconds = " << wall_seconds << "\n";
    for (const auto& f : output_files) {
        const auto full = fs::path(dir) / f;
        if (!fs::exists(full)) throw NumericError("manifest lists missing file: " + f);
        out << "output = " << f << "  checksum = " << file_checksum(full.string()) << "\n";
    }
    for (const auto& n : notes) out << "note = " << n << "\n";
    out << "\n[config]\n" << config_echo;
}

} // namespace kslab
