#include "kslab/evolution.hpp"

#include "kslab/errors.hpp"
#include "kslab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace kslab {

namespace {

double frame_speed(const SimConfig& cfg) {
    return cfg.frame == Frame::Comoving ? cfg.env.shift_speed : 0.0;
}

// Shift speed of r seen in state coordinates (zero in the co-moving frame).
double effective_shift(const SimConfig& cfg) {
    return cfg.env.shift_speed - frame_speed(cfg);
}

void sample_r(const SimConfig& cfg, double t, std::vector<double>& r) {
    const Grid& g = cfg.grid;
    r.resize(g.n_nodes);
    const double shift = effective_shift(cfg) * t;
    for (std::size_t i = 0; i < g.n_nodes; ++i) r[i] = cfg.env.at(g.node(i) - shift);
}

} // namespace

std::vector<std::string> SimConfig::validate() const {
    std::vector<std::string> warnings;
    env.validate();
    params.validate();
    const EnvConstants ec = constants(env);
    if (!(t_end >= 0.0)) throw ConfigError("t_end must be >= 0");
    if (!(cfl_safety > 0.0 && cfl_safety < 1.0))
        throw ConfigError("cfl_safety must lie in (0,1)");
    if (!(u0_amplitude > 0.0)) throw ConfigError("u0.amplitude must be > 0");
    if (!(u0_lo < u0_hi)) throw ConfigError("u0 support interval is empty");
    if (n_snapshots < 2) throw ConfigError("need at least 2 snapshots");
    if (fixed_dt && !(*fixed_dt > 0.0)) throw ConfigError("fixed_dt must be > 0");

    if (!(params.b > params.chi * params.mu))
        warnings.push_back("b <= chi*mu: global boundedness is not guaranteed (possible blow-up regime)");

    // Front containment is advisory: walls touched only by plateau or
    // extinct states are harmless under zero-flux ends.
    const double reach = std::max(std::fabs(env.shift_speed), ec.c_star) * t_end +
                         std::max(std::fabs(u0_lo), std::fabs(u0_hi)) +
                         10.0 / std::sqrt(params.nu);
    if (reach > grid.half_width()) {
        std::ostringstream os;
        os << "front containment margin not met (reach " << reach << " > half-width "
           << grid.half_width() << "); fronts may touch the grid ends";
        warnings.push_back(os.str());
    }
    return warnings;
}

Field initial_condition(const SimConfig& cfg) {
    if (!(cfg.u0_amplitude > 0.0)) throw ConfigError("u0.amplitude must be > 0");
    Field u(cfg.grid);
    const double amp = cfg.u0_amplitude;
    const double lo = cfg.u0_lo, hi = cfg.u0_hi;
    switch (cfg.u0_kind) {
    case U0Kind::Constant:
        std::fill(u.values.begin(), u.values.end(), amp);
        break;
    case U0Kind::CompactBump:
        // C-infinity mollifier with max = amp at the support center.
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double s = (2.0 * cfg.grid.node(i) - (lo + hi)) / (hi - lo);
            u[i] = std::fabs(s) < 1.0 ? amp * std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
        }
        break;
    case U0Kind::RightHalfLine:
        // exactly 0 below lo, exactly amp above hi, quintic smoothstep between
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double x = cfg.grid.node(i);
            if (x <= lo) {
                u[i] = 0.0;
            } else if (x >= hi) {
                u[i] = amp;
            } else {
                const double s = (x - lo) / (hi - lo);
                u[i] = amp * s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
            }
        }
        break;
    }
    return u;
}

double cfl_limit(const SimState& state, const SimConfig& cfg) {
    const std::size_t n = state.u.size();
    const double h = cfg.grid.h();
    const EnvConstants ec = constants(cfg.env);

    std::vector<double> a(n > 1 ? n - 1 : 1);
    kernels::face_velocity(state.v.values.data(), n, cfg.params.chi / h, frame_speed(cfg),
                           a.data());
    const double amax = kernels::max_abs(a.data(), n - 1);
    const double umax = std::max(0.0, kernels::max_val(state.u.values.data(), n));

    const double diff = 0.5 * h * h;
    const double adv = h / (amax + 1e-12);
    const double react = 1.0 / (ec.r_star + cfg.params.b * umax + 1.0);
    return std::min({diff, adv, react});
}

namespace {

struct StepBuffers {
    std::vector<double> a, flux, r, tri_work;
};

// Core update; r must already be sampled at the state's time.
void step_into(const SimState& state, const SimConfig& cfg, double dt,
               const std::vector<double>& r, StepBuffers& buf, SimState& out,
               double& clipped) {
    const std::size_t n = state.u.size();
    const double h = cfg.grid.h();

    buf.a.resize(n - 1);
    buf.flux.resize(n - 1);
    kernels::face_velocity(state.v.values.data(), n, cfg.params.chi / h, frame_speed(cfg),
                           buf.a.data());
    kernels::upwind_flux(state.u.values.data(), buf.a.data(), n, 1.0 / h, buf.flux.data());

    out.u.grid = cfg.grid;
    out.u.values.resize(n);
    clipped = kernels::euler_update(state.u.values.data(), buf.flux.data(), r.data(), n,
                                    1.0 / h, dt, cfg.params.b, out.u.values.data());
    out.t = state.t + dt;
    solve_v_tridiag_into(out.u, cfg.params, out.v, buf.tri_work);

    const double total = kernels::sum(out.u.values.data(), n);
    if (!std::isfinite(total))
        throw NumericError("NaN/Inf detected in u at t = " + std::to_string(out.t));
}

} // namespace

SimState step(const SimState& state, const SimConfig& cfg, double dt) {
    const double limit = cfl_limit(state, cfg);
    if (dt > cfg.cfl_safety * limit * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "CFL violation: dt " << dt << " exceeds " << cfg.cfl_safety * limit;
        throw NumericError(os.str());
    }
    StepBuffers buf;
    std::vector<double> r;
    sample_r(cfg, state.t, r);
    SimState out;
    double clipped = 0.0;
    step_into(state, cfg, dt, r, buf, out, clipped);
    return out;
}

Trajectory run(const SimConfig& cfg, const std::vector<Observer>& observers) {
    Trajectory traj;
    traj.cfg = cfg;
    traj.warnings = cfg.validate();

    const std::size_t n = cfg.grid.n_nodes;
    const EnvConstants ec = constants(cfg.env);
    const bool bounded = cfg.params.b > cfg.params.chi * cfg.params.mu;

    SimState state;
    state.t = 0.0;
    state.u = initial_condition(cfg);
    {
        std::vector<double> work;
        solve_v_tridiag_into(state.u, cfg.params, state.v, work);
    }

    const double u0max = kernels::max_val(state.u.values.data(), n);
    traj.sup_max_u = u0max;
    traj.apriori_bound =
        bounded ? std::max(u0max, ec.r_star / (cfg.params.b - cfg.params.chi * cfg.params.mu))
                : std::numeric_limits<double>::infinity();

    std::vector<double> snap_times(cfg.n_snapshots);
    for (std::size_t k = 0; k < cfg.n_snapshots; ++k)
        snap_times[k] = cfg.t_end * static_cast<double>(k) / static_cast<double>(cfg.n_snapshots - 1);

    auto snapshot = [&](const SimState& s) {
        traj.snapshots.push_back(s);
        for (const auto& obs : observers) obs(s);
    };
    snapshot(state);
    if (cfg.t_end <= 0.0) return traj;

    // Static r fast path: the profile is constant or frozen in this frame.
    const bool r_static =
        cfg.env.kind == ProfileKind::Constant || effective_shift(cfg) == 0.0;
    StepBuffers buf;
    std::vector<double> r;
    if (r_static) sample_r(cfg, 0.0, r);

    const double root_nu = std::sqrt(cfg.params.nu);
    const std::size_t wall_margin =
        std::min(n / 4, static_cast<std::size_t>(std::ceil(14.0 / (root_nu * cfg.grid.h()))));

    SimState next;
    std::size_t next_snap = 1;
    while (next_snap < snap_times.size()) {
        double dt = cfg.cfl_safety * cfl_limit(state, cfg);
        if (cfg.fixed_dt) {
            if (*cfg.fixed_dt > dt * (1.0 + 1e-12))
                throw NumericError("fixed_dt violates the CFL limit");
            dt = *cfg.fixed_dt;
        }
        const double t_target = snap_times[next_snap];
        bool at_snap = false;
        if (state.t + dt >= t_target - 1e-12 * cfg.t_end) {
            dt = t_target - state.t;
            at_snap = true;
        }

        if (!r_static) sample_r(cfg, state.t, r);
        double clipped = 0.0;
        step_into(state, cfg, dt, r, buf, next, clipped);
        std::swap(state, next);
        ++traj.n_steps;
        traj.total_clipped += clipped * cfg.grid.h();

        const double umax = kernels::max_val(state.u.values.data(), n);
        traj.sup_max_u = std::max(traj.sup_max_u, umax);

        if (cfg.cross_check_interval > 0 && traj.n_steps % cfg.cross_check_interval == 0) {
            const Field vk = solve_v_kernel(state.u, cfg.params);
            double disc = 0.0;
            for (std::size_t i = wall_margin; i + wall_margin < n; ++i)
                disc = std::max(disc, std::fabs(vk[i] - state.v[i]));
            traj.max_cross_check = std::max(traj.max_cross_check, disc);

            const Field vx = gradient_v(state.v);
            double viol = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < n; ++i)
                viol = std::max(viol, std::fabs(vx[i]) - root_nu * state.v[i]);
            traj.max_psi_violation = std::max(traj.max_psi_violation, viol);
            const double vmax = kernels::max_abs(state.v.values.data(), n);
            if (viol > 10.0 * cfg.grid.h() * vmax) traj.psi_bound_ok = false;
        }

        if (at_snap) {
            state.t = t_target; // kill accumulated roundoff
            snapshot(state);
            ++next_snap;
        }
    }

    traj.apriori_ok = !bounded || traj.sup_max_u <= traj.apriori_bound + 1e-6;
    if (!traj.apriori_ok)
        traj.warnings.push_back("a-priori sup bound violated: sup max u = " +
                                std::to_string(traj.sup_max_u));
    return traj;
}

EnvelopeReport check_decay_envelope(const Trajectory& traj, double kappa, double M,
                                    const EnvConstants& env) {
    EnvelopeReport rep;
    const ChemoParams& p = traj.cfg.params;
    const double root_r = std::sqrt(env.r_star);
    const double root_nu = std::sqrt(p.nu);

    if (!(kappa > 0.0 && kappa <= root_r + 1e-12)) {
        rep.skip_reason = "kappa outside (0, sqrt(r^*)]";
        return rep;
    }
    if (p.chi * p.mu > 0.0) {
        const double lhs = std::max(kappa - root_nu, 0.0) / (kappa + root_nu);
        const double rhs = 2.0 * (p.b - p.chi * p.mu) / (p.chi * p.mu);
        if (lhs > rhs) {
            rep.skip_reason = "nu clause (kappa - sqrt(nu))+/(kappa + sqrt(nu)) <= 2(b - chi mu)/(chi mu) fails";
            return rep;
        }
    }
    if (traj.snapshots.empty()) {
        rep.skip_reason = "empty trajectory";
        return rep;
    }
    const Field& u0 = traj.snapshots.front().u;
    for (std::size_t i = 0; i < u0.size(); ++i) {
        const double x = u0.grid.node(i);
        const double dom = std::min(M, M * std::exp(-kappa * std::fabs(x)));
        if (u0[i] > dom * (1.0 + 1e-12)) {
            rep.skip_reason = "initial data not dominated by min{M, M e^{-kappa|x|}}";
            return rep;
        }
    }

    rep.preconditions_ok = true;
    rep.c_kappa = (kappa * kappa + env.r_star) / kappa;
    const double v_frame =
        traj.cfg.frame == Frame::Comoving ? traj.cfg.env.shift_speed : 0.0;
    double worst = 0.0;
    for (const SimState& s : traj.snapshots) {
        for (std::size_t i = 0; i < s.u.size(); ++i) {
            if (s.u[i] <= 0.0) continue;
            const double x = s.u.grid.node(i) + v_frame * s.t; // lab coordinate
            const double envl = M * std::exp(-kappa * (std::fabs(x) - rep.c_kappa * s.t));
            worst = std::max(worst, s.u[i] / envl);
        }
    }
    rep.max_ratio = worst;
    rep.pass = worst <= 1.0 + rep.tol;
    return rep;
}

} // namespace kslab
