#include "kslab/verify.hpp"

#include "kslab/analysis.hpp"
#include "kslab/chemo.hpp"
#include "kslab/environment.hpp"
#include "kslab/errors.hpp"
#include "kslab/evolution.hpp"
#include "kslab/kernels.hpp"
#include "kslab/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace kslab {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct RunRecord {
    std::string label;
    double sup = 0.0;
    double bound = 0.0;
    bool ok = true;
};

/** Collects the a-priori bound monitor across every run a suite performs. */
struct VerifyContext {
    std::vector<RunRecord> runs;

    void record(const std::string& label, const Trajectory& traj) {
        if (!(traj.cfg.params.b > traj.cfg.params.chi * traj.cfg.params.mu)) return;
        runs.push_back({label, traj.sup_max_u, traj.apriori_bound, traj.apriori_ok});
    }
};

std::string fmt(double v, int prec = 6) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

CheckResult timed(const std::string& id, const std::string& name,
                  const std::function<std::pair<bool, std::string>()>& body) {
    CheckResult r;
    r.id = id;
    r.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        auto [pass, detail] = body();
        r.pass = pass;
        r.detail = detail;
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

Field gaussian_field(const Grid& g, double sigma) {
    Field u(g);
    for (std::size_t i = 0; i < g.n_nodes; ++i) {
        const double x = g.node(i);
        u[i] = std::exp(-x * x / (2.0 * sigma * sigma));
    }
    return u;
}

// ---------------------------------------------------------------- criterion 1
CheckResult criterion_green_kernel() {
    return timed("1", "Green-kernel identity and cross-solver agreement", [] {
        double worst_quad = 0.0;
        for (double nu : {0.25, 1.0, 4.0})
            for (double z : {0.0, 0.5, 1.0, 2.0})
                worst_quad = std::max(worst_quad,
                                      std::fabs(green_kernel_quadrature(z, nu) -
                                                green_kernel_closed_form(z, nu)));

        const Grid g(-16.0, 16.0, 4001);
        ChemoParams p;
        p.mu = 1.0;
        p.nu = 4.0;
        const Field u = gaussian_field(g, 1.0);
        const Field vk = solve_v_kernel(u, p);
        const Field vt = solve_v_tridiag(u, p);
        double worst_cross = 0.0;
        for (std::size_t i = 0; i < g.n_nodes; ++i)
            worst_cross = std::max(worst_cross, std::fabs(vk[i] - vt[i]));

        const bool pass = worst_quad <= 1e-8 && worst_cross <= 1e-5;
        return std::make_pair(pass, "max quadrature error " + fmt(worst_quad, 3) +
                                        " (tol 1e-8); kernel-vs-tridiag " +
                                        fmt(worst_cross, 3) + " (tol 1e-5, n=4001)");
    });
}

// ---------------------------------------------------------------- criterion 2
CheckResult criterion_psi_bound() {
    return timed("2", "attractant gradient bound |v_x| <= sqrt(nu) v on random u", [] {
        std::mt19937_64 rng(20240809u);
        std::uniform_int_distribution<int> n_bumps(3, 8);
        std::uniform_real_distribution<double> amp(0.0, 2.0), center(-8.0, 8.0),
            width(0.5, 2.0), log_nu(std::log(0.25), std::log(4.0));

        const Grid g(-20.0, 20.0, 2001);
        double worst_excess = -1e300;
        int failures = 0;
        for (int trial = 0; trial < 100; ++trial) {
            Field u(g);
            const int k = n_bumps(rng);
            for (int b = 0; b < k; ++b) {
                const double a = amp(rng), c = center(rng), w = width(rng);
                for (std::size_t i = 0; i < g.n_nodes; ++i) {
                    const double s = (g.node(i) - c) / w;
                    if (std::fabs(s) < 1.0) u[i] += a * std::exp(1.0 - 1.0 / (1.0 - s * s));
                }
            }
            ChemoParams p;
            p.nu = std::exp(log_nu(rng));
            const PsiBoundReport rep = check_psi_bound(u, p);
            worst_excess = std::max(worst_excess, rep.max_violation - rep.tol);
            if (!rep.pass) ++failures;
        }
        return std::make_pair(failures == 0,
                              "100 random compact u; failures " + std::to_string(failures) +
                                  "; worst (violation - tol) " + fmt(worst_excess, 3));
    });
}

// ---------------------------------------------------------------- criterion 3
CheckResult criterion_spectral_oracle() {
    return timed("3", "closed-form eigenpair at r=1, L=pi, c in {0,1,2}", [] {
        double worst_lambda = 0.0, worst_phi = 0.0;
        for (double c : {0.0, 1.0, 2.0}) {
            SpectralProblem prob{c, EnvironmentProfile::constant(1.0), kPi, 4096};
            const SpectralResult res = principal_eig(prob);
            const double expected = (4.0 - c * c - kPi * kPi / (prob.L * prob.L)) / 4.0;
            worst_lambda = std::max(worst_lambda, std::fabs(res.lambda_L - expected));

            // e^{-cx/2} cos(pi x / 2L), max-normalized like the solver output
            std::vector<double> ref(res.phi.size());
            double ref_max = 0.0;
            for (std::size_t i = 0; i < res.phi.size(); ++i) {
                const double x = res.phi.grid.node(i);
                ref[i] = std::exp(-0.5 * c * x) * std::cos(kPi * x / (2.0 * prob.L));
                ref_max = std::max(ref_max, ref[i]);
            }
            for (std::size_t i = 0; i < res.phi.size(); ++i)
                worst_phi = std::max(worst_phi, std::fabs(res.phi[i] - ref[i] / ref_max));
        }
        const bool pass = worst_lambda <= 1e-4 && worst_phi <= 1e-4;
        return std::make_pair(pass, "max |lambda - closed form| " + fmt(worst_lambda, 3) +
                                        ", max eigenfunction error " + fmt(worst_phi, 3) +
                                        " (tol 1e-4, n=4096)");
    });
}

// ---------------------------------------------------------------- criterion 4
CheckResult criterion_eigenvalue_structure() {
    return timed("4", "lambda_L monotone in L; lambda_L(r) <= lambda_L(r^*) < r^*", [] {
        // doubling sequence is strictly increasing
        const auto env0 = EnvironmentProfile::bump(-1.0, -0.7, 1.0, 2.0, 0.0, 0.7);
        const LambdaInfResult li = lambda_infinity(0.7, env0, 1e-4);
        bool monotone = true;
        for (std::size_t k = 1; k < li.history.size(); ++k)
            monotone = monotone && li.history[k].second > li.history[k - 1].second - 1e-12;
        bool below_rstar = li.lambda_inf <= 1.0 + 1e-4;

        std::mt19937_64 rng(77u);
        std::uniform_real_distribution<double> peak(0.5, 2.0), floorv(-2.0, -0.3),
            widthd(0.5, 4.0), cd(-1.5, 1.5);
        double worst_gap = -1e300; // lambda_L(r) - lambda_L(r^*), must stay <= 0
        double worst_excess = -1e300; // lambda_L(r^*) - r^*, must stay < 0
        for (int trial = 0; trial < 10; ++trial) {
            const double pk = peak(rng);
            const auto env = EnvironmentProfile::bump(floorv(rng), floorv(rng), pk,
                                                      widthd(rng), 0.0, 0.0);
            const double c = cd(rng);
            const std::size_t n = 2047;
            const double L = 20.0;
            const double lam_r = principal_eigenvalue({c, env, L, n});
            const double lam_const =
                principal_eigenvalue({c, EnvironmentProfile::constant(pk), L, n});
            worst_gap = std::max(worst_gap, lam_r - lam_const);
            worst_excess = std::max(worst_excess, lam_const - pk);

            const LambdaInfResult li_r = lambda_infinity(c, env, 1e-4);
            below_rstar = below_rstar && li_r.lambda_inf <= pk + 1e-4;
        }
        const bool pass = monotone && below_rstar && worst_gap <= 1e-10 && worst_excess < 0.0;
        return std::make_pair(pass, std::string("doubling monotone: ") +
                                        (monotone ? "yes" : "NO") +
                                        "; max lambda_L(r)-lambda_L(r^*) " + fmt(worst_gap, 3) +
                                        "; max lambda_L(r^*)-r^* " + fmt(worst_excess, 3) +
                                        "; lambda_inf <= r^*+1e-4: " +
                                        (below_rstar ? "yes" : "NO"));
    });
}

// ---------------------------------------------------------------- criterion 5
CheckResult criterion_fisher(VerifyContext& ctx) {
    return timed("5", "Fisher baseline: right-front speed 2 (5%), wake level 1 (2%)", [&] {
        SimConfig cfg;
        cfg.env = EnvironmentProfile::constant(1.0, 0.0);
        cfg.grid = Grid(-80.0, 160.0, 2401);
        cfg.params = ChemoParams{0.0, 1.0, 1.0, 1.0};
        cfg.t_end = 60.0;
        cfg.n_snapshots = 61;
        cfg.u0_kind = U0Kind::CompactBump;
        cfg.u0_amplitude = 1.0;
        cfg.u0_lo = -5.0;
        cfg.u0_hi = 5.0;
        const Trajectory traj = run(cfg);
        ctx.record("fisher", traj);

        const FrontTrajectory fronts = track_fronts(traj, 0.01);
        const SpeedFit right = fit_speed(fronts, 2.0 / 3.0, Side::Right); // t in [20, 60]
        const double wake = wake_level(traj, ProbeSpec{0.0, 1.0});

        const bool pass = std::fabs(right.speed - 2.0) <= 0.1 && std::fabs(wake - 1.0) <= 0.02;
        return std::make_pair(pass, "right speed " + fmt(right.speed) + " (want 2 +- 0.1), wake " +
                                        fmt(wake) + " (want 1 +- 0.02)");
    });
}

// ---------------------------------------------------------------- criterion 6
SimConfig case1_config(double c) {
    SimConfig cfg;
    cfg.env = EnvironmentProfile::tanh_edge(-1.0, 1.0, 2.0, 0.0, c);
    cfg.params = ChemoParams{0.2, 1.0, 1.0, 1.0};
    cfg.t_end = 80.0;
    cfg.n_snapshots = 81;
    cfg.u0_kind = U0Kind::CompactBump;
    cfg.u0_amplitude = 1.0;
    cfg.u0_lo = -5.0;
    cfg.u0_hi = 5.0;
    return cfg;
}

CheckResult criterion_chemotaxis_spreading(VerifyContext& ctx) {
    return timed("6", "shifting edge, c=0.5: left speed c, right speed c^*, wake r^*/b", [&] {
        SimConfig cfg = case1_config(0.5);
        cfg.grid = Grid(-60.0, 200.0, 2601);
        const Trajectory traj = run(cfg);
        ctx.record("case1 c=0.5", traj);

        const FrontTrajectory fronts = track_fronts(traj, 0.01);
        const SpeedFit left = fit_speed(fronts, 0.5, Side::Left);
        const SpeedFit right = fit_speed(fronts, 0.5, Side::Right);
        const double wake = wake_level(traj, ProbeSpec{0.0, 1.25});

        const bool pass = std::fabs(left.speed - 0.5) <= 0.15 &&
                          std::fabs(right.speed - 2.0) <= 0.15 &&
                          std::fabs(wake - 1.0) <= 0.05;
        return std::make_pair(pass, "left " + fmt(left.speed) + " (want 0.5 +- 0.15), right " +
                                        fmt(right.speed) + " (want 2 +- 0.15), wake " + fmt(wake) +
                                        " (want 1 +- 0.05)");
    });
}

// ---------------------------------------------------------------- criterion 7
CheckResult criterion_fast_shift_extinction(VerifyContext& ctx) {
    return timed("7a", "c=3 > c^*: extinction by t=80", [&] {
        SimConfig cfg = case1_config(3.0);
        cfg.grid = Grid(-100.0, 200.0, 3001);
        const Trajectory traj = run(cfg);
        ctx.record("case1 c=3", traj);
        const Field& uf = traj.snapshots.back().u;
        const double sup = kernels::max_val(uf.values.data(), uf.size());
        return std::make_pair(sup < 1e-4, "final sup u = " + fmt(sup, 3) + " (want < 1e-4)");
    });
}

CheckResult criterion_retreating_shift(VerifyContext& ctx) {
    return timed("7b", "c=-3 < -c^*: fronts at +-c^* within 7.5%", [&] {
        SimConfig cfg = case1_config(-3.0);
        cfg.grid = Grid(-180.0, 180.0, 3601);
        const Trajectory traj = run(cfg);
        ctx.record("case1 c=-3", traj);
        const FrontTrajectory fronts = track_fronts(traj, 0.01);
        const SpeedFit left = fit_speed(fronts, 0.5, Side::Left);
        const SpeedFit right = fit_speed(fronts, 0.5, Side::Right);
        const bool pass =
            std::fabs(left.speed + 2.0) <= 0.15 && std::fabs(right.speed - 2.0) <= 0.15;
        return std::make_pair(pass, "left " + fmt(left.speed) + " (want -2 +- 0.15), right " +
                                        fmt(right.speed) + " (want 2 +- 0.15)");
    });
}

// ---------------------------------------------------------------- criterion 8
CheckResult criterion_half_line_tracking(VerifyContext& ctx) {
    return timed("8a", "half-line data, c=0.5: left front tracks the edge speed", [&] {
        SimConfig cfg = case1_config(0.5);
        cfg.grid = Grid(-80.0, 120.0, 2001);
        cfg.u0_kind = U0Kind::RightHalfLine;
        cfg.u0_lo = 0.0;
        cfg.u0_hi = 2.0;
        const Trajectory traj = run(cfg);
        ctx.record("case1 half-line c=0.5", traj);
        const FrontTrajectory fronts = track_fronts(traj, 0.01);
        const SpeedFit left = fit_speed(fronts, 0.5, Side::Left);
        return std::make_pair(std::fabs(left.speed - 0.5) <= 0.15,
                              "left " + fmt(left.speed) + " (want 0.5 +- 0.15)");
    });
}

CheckResult criterion_half_line_fast_retreat(VerifyContext& ctx) {
    return timed("8b", "half-line data, c=-3: left front moves at -c^*", [&] {
        SimConfig cfg = case1_config(-3.0);
        cfg.grid = Grid(-200.0, 120.0, 3201);
        cfg.u0_kind = U0Kind::RightHalfLine;
        cfg.u0_lo = 0.0;
        cfg.u0_hi = 2.0;
        const Trajectory traj = run(cfg);
        ctx.record("case1 half-line c=-3", traj);
        const FrontTrajectory fronts = track_fronts(traj, 0.01);
        const SpeedFit left = fit_speed(fronts, 0.5, Side::Left);
        return std::make_pair(std::fabs(left.speed + 2.0) <= 0.15,
                              "left " + fmt(left.speed) + " (want -2 +- 0.15)");
    });
}

// ---------------------------------------------------------------- criterion 9
CheckResult criterion_bounded_habitat_persistence(VerifyContext& ctx) {
    return timed("9a", "bounded habitat, lambda_inf > 0: persistence in the moving window", [&] {
        const auto env = EnvironmentProfile::bump(-1.0, -1.0, 1.0, 10.0, 0.0, 0.5);
        const LambdaInfResult li = lambda_infinity(0.5, env, 1e-4);
        if (!(li.lambda_inf > 0.0) || li.indeterminate())
            return std::make_pair(false, "lambda_inf = " + fmt(li.lambda_inf) +
                                             " not positive; scenario invalid");

        SimConfig cfg;
        cfg.env = env;
        cfg.params = ChemoParams{0.2, 1.0, 1.0, 1.0};
        cfg.grid = Grid(-60.0, 60.0, 1201);
        cfg.frame = Frame::Comoving;
        cfg.t_end = 50.0;
        cfg.n_snapshots = 51;
        cfg.u0_amplitude = 0.5;
        cfg.u0_lo = -5.0;
        cfg.u0_hi = 5.0;
        const Trajectory traj = run(cfg);
        ctx.record("case2 persistence", traj);
        const double wmin = comoving_window_min(traj, 5.0, 0.2);
        return std::make_pair(wmin > 1e-3, "lambda_inf " + fmt(li.lambda_inf) +
                                               " > 0; window min " + fmt(wmin, 3) +
                                               " (want > 1e-3)");
    });
}

CheckResult criterion_bounded_habitat_extinction(VerifyContext& ctx) {
    return timed("9b", "bounded habitat, lambda_inf < 0 and nu >= nu^*: extinction", [&] {
        const auto env = EnvironmentProfile::bump(-1.0, -1.0, 1.0, 0.5, 0.0, 0.5);
        const LambdaInfResult li = lambda_infinity(0.5, env, 1e-4);
        const EnvConstants ec = constants(env);
        const double nu_min = nu_star(0.5, ec);
        if (!(li.lambda_inf < 0.0) || li.indeterminate())
            return std::make_pair(false, "lambda_inf = " + fmt(li.lambda_inf) +
                                             " not negative; scenario invalid");

        SimConfig cfg;
        cfg.env = env;
        cfg.params = ChemoParams{0.2, 3.0, 1.0, 1.0}; // nu = 3 >= nu^*
        if (!(cfg.params.nu >= nu_min))
            return std::make_pair(false, "nu " + fmt(cfg.params.nu) + " below nu^* " +
                                             fmt(nu_min) + "; scenario invalid");
        cfg.grid = Grid(-40.0, 40.0, 801);
        cfg.frame = Frame::Comoving;
        cfg.t_end = 60.0;
        cfg.n_snapshots = 61;
        cfg.u0_amplitude = 0.5;
        cfg.u0_lo = -3.0;
        cfg.u0_hi = 3.0;
        const Trajectory traj = run(cfg);
        ctx.record("case2 extinction", traj);
        const Field& uf = traj.snapshots.back().u;
        const double sup = kernels::max_val(uf.values.data(), uf.size());
        return std::make_pair(sup < 1e-4, "lambda_inf " + fmt(li.lambda_inf) + " < 0, nu^* " +
                                              fmt(nu_min) + "; final sup u " + fmt(sup, 3) +
                                              " (want < 1e-4)");
    });
}

// --------------------------------------------------------------- criterion 11
CheckResult criterion_decay_envelope(VerifyContext& ctx) {
    return timed("11", "exponential envelope M e^{-kappa(|x| - c_kappa t)} honored", [&] {
        SimConfig cfg;
        cfg.env = EnvironmentProfile::constant(1.0, 0.0);
        cfg.params = ChemoParams{0.2, 1.0, 1.0, 1.0};
        cfg.grid = Grid(-100.0, 100.0, 2001);
        cfg.t_end = 30.0;
        cfg.n_snapshots = 61;
        cfg.u0_amplitude = 1.0;
        cfg.u0_lo = -4.0; // dominated by min{M, M e^{-kappa|x|}} for both kappa
        cfg.u0_hi = 4.0;
        const Trajectory traj = run(cfg);
        ctx.record("envelope run", traj);

        const EnvConstants ec = constants(cfg.env);
        const double M_base =
            10.0 * std::max(1.0, ec.r_star / (cfg.params.b - cfg.params.chi * cfg.params.mu));
        bool pass = true;
        std::string detail;
        for (double kappa : {0.5, 1.0}) {
            const EnvelopeReport rep = check_decay_envelope(traj, kappa, M_base, ec);
            if (!rep.preconditions_ok) {
                pass = false;
                detail += "kappa " + fmt(kappa) + ": skipped (" + rep.skip_reason + "); ";
                continue;
            }
            pass = pass && rep.pass;
            detail += "kappa " + fmt(kappa) + ": max ratio " + fmt(rep.max_ratio) + " (c_kappa " +
                      fmt(rep.c_kappa) + "); ";
        }
        // sensitivity of the unquantified M >> r^*/(b - chi mu) choice
        for (double mult : {0.5, 2.0}) {
            const EnvelopeReport rep = check_decay_envelope(traj, 1.0, mult * M_base, ec);
            detail += "M x" + fmt(mult) + ": ratio " +
                      (rep.preconditions_ok ? fmt(rep.max_ratio) : "skipped") + "; ";
        }
        return std::make_pair(pass, detail);
    });
}

// --------------------------------------------------------------- criterion 12
CheckResult criterion_scheme_order(VerifyContext& ctx) {
    return timed("12", "error vs fine reference shrinks >= 3.5x under h->h/2, dt->dt/4", [&] {
        auto make = [](std::size_t n, double dt) {
            SimConfig cfg;
            cfg.env = EnvironmentProfile::constant(1.0, 0.0);
            cfg.params = ChemoParams{0.0, 1.0, 1.0, 1.0};
            cfg.grid = Grid(-10.0, 10.0, n);
            cfg.t_end = 1.0;
            cfg.n_snapshots = 2;
            cfg.fixed_dt = dt;
            cfg.u0_amplitude = 0.5;
            cfg.u0_lo = -4.0;
            cfg.u0_hi = 4.0;
            cfg.cross_check_interval = 0;
            return cfg;
        };
        const Trajectory coarse = run(make(101, 5e-3));
        const Trajectory medium = run(make(201, 1.25e-3));
        const Trajectory fine = run(make(401, 3.125e-4));
        ctx.record("order coarse", coarse);
        ctx.record("order fine", fine);

        const Field& uc = coarse.snapshots.back().u;
        const Field& um = medium.snapshots.back().u;
        const Field& uf = fine.snapshots.back().u;
        double ec_ = 0.0, em = 0.0;
        for (std::size_t i = 0; i < uc.size(); ++i)
            ec_ = std::max(ec_, std::fabs(uc[i] - uf[4 * i]));
        for (std::size_t i = 0; i < um.size(); ++i)
            em = std::max(em, std::fabs(um[i] - uf[2 * i]));
        const double ratio = ec_ / em;
        return std::make_pair(ratio >= 3.5, "errors " + fmt(ec_, 3) + " -> " + fmt(em, 3) +
                                                ", ratio " + fmt(ratio) + " (want >= 3.5)");
    });
}

// --------------------------------------------------------------- criterion 10
CheckResult criterion_apriori_bound(const VerifyContext& ctx) {
    CheckResult r;
    r.id = "10";
    r.name = "a-priori sup bound max{||u0||, r^*/(b-chi mu)} + 1e-6 on every run";
    bool pass = !ctx.runs.empty();
    std::string worst_label;
    double worst_slack = 1e300;
    for (const RunRecord& rec : ctx.runs) {
        pass = pass && rec.ok;
        const double slack = rec.bound + 1e-6 - rec.sup;
        if (slack < worst_slack) {
            worst_slack = slack;
            worst_label = rec.label;
        }
    }
    r.pass = pass;
    r.detail = std::to_string(ctx.runs.size()) + " runs monitored; tightest slack " +
               fmt(worst_slack, 3) + " (" + worst_label + ")";
    return r;
}

} // namespace

std::vector<std::string> verify_suites() {
    return {"kernel", "spectral", "fisher", "case1", "case2", "bounds"};
}

std::vector<CheckResult> run_verify_suite(const std::string& suite) {
    VerifyContext ctx;
    std::vector<CheckResult> out;
    if (suite == "kernel") {
        out.push_back(criterion_green_kernel());
        out.push_back(criterion_psi_bound());
    } else if (suite == "spectral") {
        out.push_back(criterion_spectral_oracle());
        out.push_back(criterion_eigenvalue_structure());
    } else if (suite == "fisher") {
        out.push_back(criterion_fisher(ctx));
        out.push_back(criterion_apriori_bound(ctx));
    } else if (suite == "case1") {
        out.push_back(criterion_chemotaxis_spreading(ctx));
        out.push_back(criterion_fast_shift_extinction(ctx));
        out.push_back(criterion_retreating_shift(ctx));
        out.push_back(criterion_half_line_tracking(ctx));
        out.push_back(criterion_half_line_fast_retreat(ctx));
        out.push_back(criterion_apriori_bound(ctx));
    } else if (suite == "case2") {
        out.push_back(criterion_bounded_habitat_persistence(ctx));
        out.push_back(criterion_bounded_habitat_extinction(ctx));
        out.push_back(criterion_apriori_bound(ctx));
    } else if (suite == "bounds") {
        out.push_back(criterion_decay_envelope(ctx));
        out.push_back(criterion_scheme_order(ctx));
        out.push_back(criterion_apriori_bound(ctx));
    } else {
        throw ConfigError("unknown verify suite '" + suite + "' (expected kernel, spectral, "
                          "fisher, case1, case2, or bounds)");
    }
    return out;
}

std::vector<CheckResult> run_all_criteria() {
    VerifyContext ctx;
    std::vector<CheckResult> out;
    out.push_back(criterion_green_kernel());
    out.push_back(criterion_psi_bound());
    out.push_back(criterion_spectral_oracle());
    out.push_back(criterion_eigenvalue_structure());
    out.push_back(criterion_fisher(ctx));
    out.push_back(criterion_chemotaxis_spreading(ctx));
    out.push_back(criterion_fast_shift_extinction(ctx));
    out.push_back(criterion_retreating_shift(ctx));
    out.push_back(criterion_half_line_tracking(ctx));
    out.push_back(criterion_half_line_fast_retreat(ctx));
    out.push_back(criterion_bounded_habitat_persistence(ctx));
    out.push_back(criterion_bounded_habitat_extinction(ctx));
    out.push_back(criterion_apriori_bound(ctx));
    out.push_back(criterion_decay_envelope(ctx));
    out.push_back(criterion_scheme_order(ctx));
    // keep the printed order aligned with the criterion numbering
    std::stable_sort(out.begin(), out.end(), [](const CheckResult& a, const CheckResult& b) {
        auto key = [](const CheckResult& r) {
            int num = 0;
            for (char ch : r.id)
                if (ch >= '0' && ch <= '9') num = num * 10 + (ch - '0');
            return num * 2 + (r.id.back() == 'b' ? 1 : 0);
        };
        return key(a) < key(b);
    });
    return out;
}

std::string format_check_line(const CheckResult& r) {
    std::ostringstream os;
    os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << " -- " << r.detail
       << " [" << fmt(r.seconds, 3) << " s]";
    return os.str();
}

} // namespace kslab
