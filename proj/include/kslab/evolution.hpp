#ifndef KSLAB_EVOLUTION_HPP
#define KSLAB_EVOLUTION_HPP

#include "kslab/chemo.hpp"
#include "kslab/environment.hpp"
#include "kslab/grid.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace kslab {

enum class U0Kind { CompactBump, RightHalfLine, Constant };
enum class Frame { Lab, Comoving };

struct SimConfig {
    Grid grid;
    EnvironmentProfile env;
    ChemoParams params;
    double t_end = 1.0;
    double cfl_safety = 0.9;
    U0Kind u0_kind = U0Kind::CompactBump;
    double u0_amplitude = 1.0;
    double u0_lo = -5.0; // support interval
    double u0_hi = 5.0;
    Frame frame = Frame::Lab;
    std::size_t n_snapshots = 81;
    std::size_t cross_check_interval = 100; // kernel-vs-tridiag cadence, 0 = off
    std::optional<double> fixed_dt;         // overrides CFL-adaptive dt (still checked)
    double front_level_factor = 0.01;       // theta = factor * r^*/b
    double fit_window = 0.5;                // trailing fraction used for speed fits

    /** Throws ConfigError on hard errors, returns soft warnings. */
    std::vector<std::string> validate() const;
};

struct SimState {
    double t = 0.0;
    Field u;
    Field v;
};

struct Trajectory {
    SimConfig cfg;
    std::vector<SimState> snapshots;

    // run monitors
    double sup_max_u = 0.0;      // sup_t max_x u
    double apriori_bound = 0.0;  // max{||u0||_inf, r^*/(b - chi mu)} when b > chi mu
    bool apriori_ok = true;      // sup_max_u <= apriori_bound + 1e-6
    double total_clipped = 0.0;  // accumulated negative-undershoot mass (h-scaled)
    double max_cross_check = 0.0; // worst interior kernel-vs-tridiag discrepancy
    double max_psi_violation = 0.0; // worst |v_x| - sqrt(nu) v, sampled with the cross-check
    bool psi_bound_ok = true;       // violation stayed below 10 h ||v||_inf at every sample
    std::size_t n_steps = 0;
    std::vector<std::string> warnings;
};

Field initial_condition(const SimConfig& cfg);

/** One forward-Euler update (conservative upwind chemotaxis flux) plus the
 *  elliptic v refresh.  dt must satisfy the CFL precondition. */
SimState step(const SimState& state, const SimConfig& cfg, double dt);

/** Largest admissible dt for the state (before the cfl_safety factor). */
double cfl_limit(const SimState& state, const SimConfig& cfg);

using Observer = std::function<void(const SimState&)>;

/** Integrates to t_end, snapshotting at evenly spaced times. */
Trajectory run(const SimConfig& cfg, const std::vector<Observer>& observers = {});

struct EnvelopeReport {
    bool preconditions_ok = false;
    std::string skip_reason;
    double max_ratio = 0.0; // max over snapshots/nodes of u / envelope
    double tol = 1e-3;      // pass iff max_ratio <= 1 + tol
    bool pass = false;
    double c_kappa = 0.0;
};

/** Exponential envelope u(t,x) <= M exp(-kappa (|x| - c_kappa t)),
 *  c_kappa = (kappa^2 + r^*)/kappa.  Preconditions (kappa range, the nu
 *  clause, initial-data domination) are checked; on violation the check is
 *  skipped with a reason. */
EnvelopeReport check_decay_envelope(const Trajectory& traj, double kappa, double M,
                                    const EnvConstants& env);

} // namespace kslab

#endif
