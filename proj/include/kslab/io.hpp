#ifndef KSLAB_IO_HPP
#define KSLAB_IO_HPP

#include "kslab/analysis.hpp"
#include "kslab/evolution.hpp"
#include "kslab/spectral.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kslab {

inline constexpr const char* kVersion = "kslab 0.1.0";

/** FNV-1a 64-bit over a file's bytes, hex-encoded. */
std::string file_checksum(const std::string& path);

void write_snapshots_csv(const std::string& path, const Trajectory& traj);
void write_fronts_csv(const std::string& path, const FrontTrajectory& fronts);
void write_eigenfunction_csv(const std::string& path, const SpectralResult& result);

/** gnuplot-ready per-snapshot slices: <dir>/snap_NNNN.dat with "x u v" rows. */
void write_plot_slices(const std::string& dir, const Trajectory& traj);

void write_report(const std::string& path, const Trajectory& traj, const RegimeReport& report);

struct Manifest {
    std::string config_echo;
    std::string code_version = kVersion;
    std::string frame;
    std::string kernel_backend;
    double wall_seconds = 0.0;
    std::vector<std::string> output_files; // paths relative to the manifest
    std::vector<std::string> notes;

    /** Writes the manifest including a checksum line per output file; every
     *  listed file must exist. */
    void write(const std::string& dir, const std::string& filename = "manifest.txt") const;
};

} // namespace kslab

#endif
