#ifndef KSLAB_ANALYSIS_HPP
#define KSLAB_ANALYSIS_HPP

#include "kslab/evolution.hpp"
#include "kslab/spectral.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kslab {

/** Level-set front positions over time, in lab coordinates.  Entries are
 *  absent whenever u < level everywhere. */
struct FrontTrajectory {
    double level = 0.0;
    std::vector<double> times;
    std::vector<std::optional<double>> left_front;  // inf{x : u >= level}
    std::vector<std::optional<double>> right_front; // sup{x : u >= level}
};

enum class Regime {
    Extinction,
    SpreadBothDirections,
    SpreadAlongShift,
    PersistAroundShift,
    Indeterminate,
};

std::string regime_name(Regime r);

struct RegimeReport {
    Regime classification = Regime::Indeterminate;
    std::optional<double> left_speed;
    std::optional<double> right_speed;
    std::optional<double> wake_level;
    std::vector<std::pair<std::string, std::string>> diagnostics;
};

struct H1Verdict {
    bool holds = false;
    double b_min_required = 0.0;
    double margin = 0.0;
};

/** (H1): b > chi mu and b >= (1 + (1/2)(sqrt(r^*)-sqrt(nu))_+/(sqrt(r^*)+sqrt(nu))) chi mu. */
H1Verdict check_h1(const ChemoParams& params, const EnvConstants& env);

FrontTrajectory track_fronts(const Trajectory& traj, double level);

enum class Side { Left, Right };

struct SpeedFit {
    double speed = 0.0;
    double stderr_ = 0.0;
    std::size_t n_samples = 0;
};

/** Least-squares slope of front position against time over the trailing
 *  `window` fraction; needs >= 5 present samples there. */
SpeedFit fit_speed(const FrontTrajectory& front, double window, Side side);

/** Probe moving as x0 + speed * t (lab coordinates). */
struct ProbeSpec {
    double x0 = 0.0;
    double speed = 0.0;
};

/** Time-average of u at the probe over the last 20% of the run. */
double wake_level(const Trajectory& traj, const ProbeSpec& probe);

/** Minimum of u over the co-moving window |x - ct| <= window_halfwidth,
 *  minimized over the trailing `fraction` of snapshots. */
double comoving_window_min(const Trajectory& traj, double window_halfwidth,
                           double fraction = 0.2);

/** Predicted regime from the threshold rules (c against c^*, sign of
 *  lambda_inf); clause names the rule applied.  lambda_inf is required for
 *  the bounded-habitat dichotomy and ignored otherwise. */
Regime predict_regime(const SimConfig& cfg, const std::optional<LambdaInfResult>& lambda_inf,
                      std::string& clause);

/** Classifies a finished run against the predicted-regime table. */
RegimeReport classify(const Trajectory& traj,
                      const std::optional<LambdaInfResult>& lambda_inf = {});

} // namespace kslab

#endif
