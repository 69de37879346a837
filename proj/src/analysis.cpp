#include "kslab/analysis.hpp"

#include "kslab/errors.hpp"
#include "kslab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace kslab {

namespace {

constexpr double kExtinctBar = 1e-4;
constexpr double kPersistBar = 1e-3;

double frame_speed_of(const Trajectory& traj) {
    return traj.cfg.frame == Frame::Comoving ? traj.cfg.env.shift_speed : 0.0;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

} // namespace

std::string regime_name(Regime r) {
    switch (r) {
    case Regime::Extinction: return "Extinction";
    case Regime::SpreadBothDirections: return "SpreadBothDirections";
    case Regime::SpreadAlongShift: return "SpreadAlongShift";
    case Regime::PersistAroundShift: return "PersistAroundShift";
    case Regime::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

H1Verdict check_h1(const ChemoParams& params, const EnvConstants& env) {
    H1Verdict v;
    const double root_r = std::sqrt(env.r_star);
    const double root_nu = std::sqrt(params.nu);
    const double factor = 1.0 + 0.5 * std::max(root_r - root_nu, 0.0) / (root_r + root_nu);
    const double chimu = params.chi * params.mu;
    v.b_min_required = factor * chimu;
    v.holds = params.b > chimu && params.b >= v.b_min_required;
    v.margin = params.b - std::max(chimu, v.b_min_required);
    return v;
}

FrontTrajectory track_fronts(const Trajectory& traj, double level) {
    if (!(level > 0.0)) throw std::invalid_argument("front level must be positive");
    const EnvConstants ec = constants(traj.cfg.env);
    if (!(level < ec.r_star / traj.cfg.params.b))
        throw std::invalid_argument("front level must lie below the plateau r^*/b");
    FrontTrajectory f;
    f.level = level;
    const double vf = frame_speed_of(traj);
    for (const SimState& s : traj.snapshots) {
        f.times.push_back(s.t);
        const auto& u = s.u;
        const std::size_t n = u.size();
        const double h = u.grid.h();
        const double shift = vf * s.t; // state -> lab coordinate

        std::optional<double> left, right;
        // rightmost crossing: largest i with u_i >= level
        std::size_t i = n;
        while (i-- > 0)
            if (u[i] >= level) break;
        if (i != static_cast<std::size_t>(-1) && u[i] >= level) {
            double x = u.grid.node(i);
            if (i + 1 < n && u[i] > u[i + 1])
                x += h * (u[i] - level) / (u[i] - u[i + 1]);
            right = x + shift;
            // leftmost crossing
            std::size_t j = 0;
            while (j < n && u[j] < level) ++j;
            double xl = u.grid.node(j);
            if (j > 0 && u[j] > u[j - 1])
                xl -= h * (u[j] - level) / (u[j] - u[j - 1]);
            left = xl + shift;
        }
        f.left_front.push_back(left);
        f.right_front.push_back(right);
    }
    return f;
}

SpeedFit fit_speed(const FrontTrajectory& front, double window, Side side) {
    if (!(window > 0.0 && window <= 1.0))
        throw std::invalid_argument("fit window must lie in (0, 1]");
    if (front.times.empty()) throw NumericError("fit_speed: empty front trajectory");
    const double t_end = front.times.back();
    const double t_min = t_end - window * (t_end - front.times.front());
    const auto& pos = side == Side::Left ? front.left_front : front.right_front;

    std::vector<double> ts, xs;
    for (std::size_t k = 0; k < front.times.size(); ++k) {
        if (front.times[k] + 1e-12 < t_min) continue;
        if (!pos[k]) continue;
        ts.push_back(front.times[k]);
        xs.push_back(*pos[k]);
    }
    if (ts.size() < 5) throw NumericError("fit_speed: fewer than 5 samples in window");

    const auto m = static_cast<double>(ts.size());
    double st = 0.0, sx = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        st += ts[k];
        sx += xs[k];
    }
    const double tbar = st / m, xbar = sx / m;
    double stt = 0.0, stx = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        stt += (ts[k] - tbar) * (ts[k] - tbar);
        stx += (ts[k] - tbar) * (xs[k] - xbar);
    }
    if (!(stt > 0.0)) throw NumericError("fit_speed: degenerate time window");

    SpeedFit fit;
    fit.speed = stx / stt;
    fit.n_samples = ts.size();
    double ss_res = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const double r = xs[k] - xbar - fit.speed * (ts[k] - tbar);
        ss_res += r * r;
    }
    fit.stderr_ = ts.size() > 2 ? std::sqrt(ss_res / (m - 2.0) / stt) : 0.0;
    return fit;
}

double wake_level(const Trajectory& traj, const ProbeSpec& probe) {
    const double vf = frame_speed_of(traj);
    const double t_end = traj.snapshots.back().t;
    double acc = 0.0;
    std::size_t count = 0;
    for (const SimState& s : traj.snapshots) {
        if (s.t < 0.8 * t_end - 1e-12) continue;
        const double x_lab = probe.x0 + probe.speed * s.t;
        const double x_state = x_lab - vf * s.t;
        if (x_state < s.u.grid.x_min || x_state > s.u.grid.x_max)
            throw NumericError("wake probe exits the grid");
        acc += s.u.interpolate(x_state);
        ++count;
    }
    if (count == 0) throw NumericError("wake probe found no snapshots in the window");
    return acc / static_cast<double>(count);
}

double comoving_window_min(const Trajectory& traj, double window_halfwidth, double fraction) {
    const double vf = frame_speed_of(traj);
    const double c = traj.cfg.env.shift_speed;
    const double t_end = traj.snapshots.back().t;
    double worst = std::numeric_limits<double>::infinity();
    for (const SimState& s : traj.snapshots) {
        if (s.t < (1.0 - fraction) * t_end - 1e-12) continue;
        // lab window |x - ct| <= W in state coordinates
        const double center = c * s.t - vf * s.t;
        bool any = false;
        for (std::size_t i = 0; i < s.u.size(); ++i) {
            if (std::fabs(s.u.grid.node(i) - center) > window_halfwidth) continue;
            worst = std::min(worst, s.u[i]);
            any = true;
        }
        if (!any) throw NumericError("co-moving window left the grid");
    }
    return worst;
}

Regime predict_regime(const SimConfig& cfg, const std::optional<LambdaInfResult>& lambda_inf,
                      std::string& clause) {
    const EnvConstants ec = constants(cfg.env);
    const double c = cfg.env.shift_speed;
    const double cst = ec.c_star;

    switch (cfg.env.kind) {
    case ProfileKind::Constant:
        clause = "Fisher-KPP baseline: homogeneous r^* > 0, spread at +-c^*";
        return Regime::SpreadBothDirections;

    case ProfileKind::Tanh:
        if (cfg.u0_kind == U0Kind::RightHalfLine) {
            if (c >= -cst) {
                clause = "half-line data, c >= -c^*: spread along the shift at speed c";
                return Regime::SpreadAlongShift;
            }
            clause = "half-line data, c < -c^*: left front moves at -c^*";
            return Regime::SpreadBothDirections;
        }
        if (cfg.u0_kind == U0Kind::Constant) {
            clause = "u0 has no compact support/half-line shape: no clause applies";
            return Regime::Indeterminate;
        }
        if (c > cst) {
            clause = "compact data, c > c^*: extinction";
            return Regime::Extinction;
        }
        if (c >= -cst && c < cst) {
            clause = "compact data, -c^* <= c < c^*: spread along the shifting habitat";
            return Regime::SpreadAlongShift;
        }
        if (c < -cst) {
            clause = "compact data, c < -c^*: spread in both directions";
            return Regime::SpreadBothDirections;
        }
        clause = "c = c^* exactly: threshold case not covered";
        return Regime::Indeterminate;

    case ProfileKind::Bump:
        if (std::fabs(c) > cst) {
            clause = "bounded habitat, |c| > c^*: extinction";
            return Regime::Extinction;
        }
        if (std::fabs(c) == cst) {
            clause = "|c| = c^* exactly: threshold case not covered";
            return Regime::Indeterminate;
        }
        if (!lambda_inf) {
            clause = "bounded habitat, |c| < c^*: need lambda_inf to decide";
            return Regime::Indeterminate;
        }
        if (lambda_inf->indeterminate()) {
            clause = "lambda_inf within tolerance of 0: sign undecidable (open case)";
            return Regime::Indeterminate;
        }
        if (lambda_inf->lambda_inf > 0.0) {
            clause = "bounded habitat, |c| < c^*, lambda_inf > 0: persist around the habitat";
            return Regime::PersistAroundShift;
        }
        if (cfg.params.nu >= nu_star(c, ec)) {
            clause = "bounded habitat, lambda_inf < 0 and nu >= nu^*: extinction";
            return Regime::Extinction;
        }
        clause = "lambda_inf < 0 but nu < nu^*: not covered";
        return Regime::Indeterminate;
    }
    clause = "unreachable";
    return Regime::Indeterminate;
}

namespace {

struct Candidate {
    Regime regime;
    std::optional<double> left;
    std::optional<double> right;
};

void add_diag(RegimeReport& rep, const std::string& k, const std::string& v) {
    rep.diagnostics.emplace_back(k, v);
}

} // namespace

RegimeReport classify(const Trajectory& traj, const std::optional<LambdaInfResult>& lambda_inf) {
    if (traj.snapshots.empty()) throw std::invalid_argument("classify: empty trajectory");
    const SimConfig& cfg = traj.cfg;
    const EnvConstants ec = constants(cfg.env);
    const double c = cfg.env.shift_speed;
    RegimeReport rep;

    const H1Verdict h1 = check_h1(cfg.params, ec);
    add_diag(rep, "h1_holds", h1.holds ? "true" : "false");
    add_diag(rep, "h1_margin", fmt(h1.margin));
    add_diag(rep, "sup_max_u", fmt(traj.sup_max_u));
    add_diag(rep, "apriori_bound_ok", traj.apriori_ok ? "true" : "false");
    add_diag(rep, "clipped_mass", fmt(traj.total_clipped));
    add_diag(rep, "psi_bound_ok", traj.psi_bound_ok ? "true" : "false");
    add_diag(rep, "max_psi_violation", fmt(traj.max_psi_violation));
    add_diag(rep, "kernel_cross_check_max", fmt(traj.max_cross_check));
    if (lambda_inf) {
        add_diag(rep, "lambda_inf", fmt(lambda_inf->lambda_inf));
        add_diag(rep, "lambda_inf_L_used", fmt(lambda_inf->L_used));
        add_diag(rep, "lambda_inf_sign",
                 lambda_inf->indeterminate() ? "indeterminate"
                                             : (lambda_inf->lambda_inf > 0.0 ? "+" : "-"));
    }
    std::string clause;
    const Regime predicted = predict_regime(cfg, lambda_inf, clause);
    add_diag(rep, "predicted_regime", regime_name(predicted));
    add_diag(rep, "prediction_clause", clause);

    const Field& u_final = traj.snapshots.back().u;
    const double final_sup = kernels::max_val(u_final.values.data(), u_final.size());
    add_diag(rep, "final_sup_u", fmt(final_sup));
    if (final_sup < kExtinctBar) {
        rep.classification = Regime::Extinction;
        return rep;
    }

    const double level = cfg.front_level_factor * ec.r_star / cfg.params.b;
    add_diag(rep, "front_level", fmt(level));
    const FrontTrajectory fronts = track_fronts(traj, level);

    // level-set sensitivity: speeds at 0.1x / 1x / 10x the threshold
    for (double f : {0.1, 1.0, 10.0}) {
        const double lvl = f * level;
        if (lvl >= ec.r_star / cfg.params.b) continue;
        try {
            const FrontTrajectory ft = track_fronts(traj, lvl);
            const SpeedFit l = fit_speed(ft, cfg.fit_window, Side::Left);
            const SpeedFit r = fit_speed(ft, cfg.fit_window, Side::Right);
            std::ostringstream os;
            os << "left " << l.speed << ", right " << r.speed;
            add_diag(rep, "speeds_at_" + fmt(f) + "x_level", os.str());
        } catch (const NumericError&) {
            add_diag(rep, "speeds_at_" + fmt(f) + "x_level", "unavailable");
        }
    }

    // bounded habitat: the dichotomy is persistence in the co-moving window
    if (cfg.env.kind == ProfileKind::Bump) {
        const double W = cfg.env.width;
        const double wmin = comoving_window_min(traj, W, 0.2);
        add_diag(rep, "comoving_window_min", fmt(wmin));
        add_diag(rep, "comoving_window_halfwidth", fmt(W));
        if (wmin > kPersistBar) {
            rep.classification = Regime::PersistAroundShift;
            try {
                const SpeedFit l = fit_speed(fronts, cfg.fit_window, Side::Left);
                const SpeedFit r = fit_speed(fronts, cfg.fit_window, Side::Right);
                rep.left_speed = l.speed;
                rep.right_speed = r.speed;
            } catch (const NumericError&) {
                rep.left_speed = c;
                rep.right_speed = c;
                add_diag(rep, "front_fit", "unavailable; habitat speed reported");
            }
            try {
                rep.wake_level = wake_level(traj, ProbeSpec{0.0, c});
            } catch (const NumericError&) {
            }
        } else {
            rep.classification = Regime::Indeterminate;
            add_diag(rep, "indeterminate_reason",
                     "population above extinction bar but below persistence bar in window");
        }
        return rep;
    }

    // Case 1 / constant habitat: compare measured speeds with the clauses
    std::optional<SpeedFit> lf, rf;
    try {
        lf = fit_speed(fronts, cfg.fit_window, Side::Left);
    } catch (const NumericError&) {
    }
    try {
        rf = fit_speed(fronts, cfg.fit_window, Side::Right);
    } catch (const NumericError&) {
    }

    // grid-pinned fronts carry no speed information
    const double t_end = fronts.times.back();
    const double t_min = t_end - cfg.fit_window * (t_end - fronts.times.front());
    const double vf = cfg.frame == Frame::Comoving ? c : 0.0;
    std::size_t left_pinned = 0, right_pinned = 0, in_window = 0;
    for (std::size_t k = 0; k < fronts.times.size(); ++k) {
        if (fronts.times[k] + 1e-12 < t_min) continue;
        ++in_window;
        const double shift = vf * fronts.times[k];
        const double h = cfg.grid.h();
        if (fronts.left_front[k] && *fronts.left_front[k] <= cfg.grid.x_min + shift + h)
            ++left_pinned;
        if (fronts.right_front[k] && *fronts.right_front[k] >= cfg.grid.x_max + shift - h)
            ++right_pinned;
    }
    const bool left_ok = lf && left_pinned == 0;
    const bool right_ok = rf && right_pinned == 0;
    if (lf) add_diag(rep, "left_speed_measured", fmt(lf->speed) + " +- " + fmt(lf->stderr_));
    if (rf) add_diag(rep, "right_speed_measured", fmt(rf->speed) + " +- " + fmt(rf->stderr_));
    if (left_pinned) add_diag(rep, "left_front_pinned", fmt(static_cast<double>(left_pinned)));
    if (right_pinned) add_diag(rep, "right_front_pinned", fmt(static_cast<double>(right_pinned)));

    if (in_window > 0 && left_pinned == in_window && right_pinned == in_window) {
        // population fills the whole grid for the entire window
        rep.classification = Regime::SpreadBothDirections;
        rep.left_speed = lf ? lf->speed : 0.0;
        rep.right_speed = rf ? rf->speed : 0.0;
        add_diag(rep, "domain_saturated", "true");
        try {
            rep.wake_level = wake_level(traj, ProbeSpec{0.0, 0.0});
        } catch (const NumericError&) {
        }
        return rep;
    }

    std::vector<Candidate> cands;
    const bool half_line = cfg.u0_kind == U0Kind::RightHalfLine;
    if (cfg.env.kind == ProfileKind::Constant) {
        cands.push_back({Regime::SpreadBothDirections, -ec.c_star, ec.c_star});
    } else if (half_line) {
        cands.push_back({Regime::SpreadAlongShift, c, std::nullopt});
        cands.push_back({Regime::SpreadBothDirections, -ec.c_star, std::nullopt});
    } else {
        cands.push_back({Regime::SpreadAlongShift, c, ec.c_star});
        cands.push_back({Regime::SpreadBothDirections, -ec.c_star, ec.c_star});
    }

    double dt_win = 1.0;
    if (const std::size_t m = fronts.times.size(); m >= 2)
        dt_win = cfg.fit_window * (fronts.times.back() - fronts.times.front()) /
                 static_cast<double>(m - 1);
    double eps_meas = cfg.grid.h() / std::max(dt_win, 1e-12);
    if (lf) eps_meas += 2.0 * lf->stderr_;
    if (rf) eps_meas += 2.0 * rf->stderr_;
    add_diag(rep, "eps_meas", fmt(eps_meas));

    auto distance = [&](const Candidate& cand) -> std::optional<double> {
        double d = -1.0;
        bool used = false;
        if (cand.left && left_ok) {
            d = std::max(d, std::fabs(lf->speed - *cand.left));
            used = true;
        }
        if (cand.right && right_ok) {
            d = std::max(d, std::fabs(rf->speed - *cand.right));
            used = true;
        }
        if (!used) return std::nullopt;
        return d;
    };

    std::vector<std::pair<double, std::size_t>> scored;
    for (std::size_t k = 0; k < cands.size(); ++k)
        if (auto d = distance(cands[k])) scored.emplace_back(*d, k);
    if (scored.empty()) {
        rep.classification = Regime::Indeterminate;
        add_diag(rep, "indeterminate_reason", "no usable front-speed measurements");
        return rep;
    }
    std::sort(scored.begin(), scored.end());

    const Candidate& best = cands[scored.front().second];
    const double d_best = scored.front().first;
    if (scored.size() >= 2 && scored[1].first - d_best <= eps_meas) {
        rep.classification = Regime::Indeterminate;
        add_diag(rep, "indeterminate_reason", "measured speeds straddle the regime thresholds");
        return rep;
    }
    if (d_best > 0.5 + eps_meas) {
        rep.classification = Regime::Indeterminate;
        add_diag(rep, "indeterminate_reason",
                 "measured speeds far from every candidate regime (distance " + fmt(d_best) + ")");
        return rep;
    }

    rep.classification = best.regime;
    if (left_ok) rep.left_speed = lf->speed;
    if (right_ok) rep.right_speed = rf->speed;

    ProbeSpec probe{0.0, 0.0};
    if (best.regime == Regime::SpreadAlongShift)
        probe.speed = 0.5 * (c + ec.c_star);
    else
        probe.speed = half_line ? 0.5 * (-ec.c_star + ec.c_star) : 0.0;
    try {
        rep.wake_level = wake_level(traj, probe);
        add_diag(rep, "wake_probe_speed", fmt(probe.speed));
    } catch (const NumericError& e) {
        add_diag(rep, "wake_level", std::string("unavailable: ") + e.what());
    }
    return rep;
}

} // namespace kslab
