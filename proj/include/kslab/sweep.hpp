#ifndef KSLAB_SWEEP_HPP
#define KSLAB_SWEEP_HPP

#include "kslab/config.hpp"

#include <map>
#include <string>
#include <vector>

namespace kslab {

/** Cross-product sweep: template scenario keys plus `axis.<key> = v1 v2 ...`
 *  lines; `cap` bounds the product size. */
struct SweepSpec {
    KeyValueFile scenario;
    std::vector<std::pair<std::string, std::vector<std::string>>> axes;
    std::size_t cap = 256;
    double lambda_tol = 1e-4;
};

SweepSpec parse_sweep_spec(const std::string& path);

struct SweepCell {
    std::size_t index = 0;
    std::vector<std::pair<std::string, std::string>> axis_values;
    std::string predicted;
    std::string measured;
    std::string clause;
    std::string detail;
    bool ok = false;     // measured matches prediction, or Indeterminate with reason
    bool failed = false; // the run itself errored
};

struct SweepOutcome {
    std::vector<SweepCell> cells;
    bool all_ok = false;
};

/** Runs the sweep with `jobs` worker threads; writes per-cell directories and
 *  summary.csv under out_dir. */
SweepOutcome run_sweep(const SweepSpec& spec, const std::string& out_dir, std::size_t jobs);

} // namespace kslab

#endif
