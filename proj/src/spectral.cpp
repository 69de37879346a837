#include "kslab/spectral.hpp"

#include "kslab/errors.hpp"
#include "kslab/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>

namespace kslab {

namespace spectral_detail {

SymTridiag assemble_symmetrized(const SpectralProblem& prob) {
    if (prob.n < 16) throw std::invalid_argument("spectral problem needs n >= 16");
    if (!(prob.L > 0.0)) throw std::invalid_argument("spectral problem needs L > 0");
    SymTridiag m;
    const std::size_t n = prob.n;
    m.h = 2.0 * prob.L / static_cast<double>(n + 1);
    m.off = 1.0 / (m.h * m.h);
    m.diag.resize(n);
    m.x.resize(n);
    const double c2_4 = 0.25 * prob.c * prob.c;
    for (std::size_t k = 0; k < n; ++k) {
        m.x[k] = -prob.L + static_cast<double>(k + 1) * m.h;
        m.diag[k] = -2.0 * m.off + (prob.env.at(m.x[k]) - c2_4);
    }
    return m;
}

std::size_t count_below(const std::vector<double>& diag, double off, double sigma) {
    // LDL^T pivots of (A - sigma I); negative pivots count eigenvalues < sigma.
    const double off2 = off * off;
    std::size_t count = 0;
    double d = diag[0] - sigma;
    if (d < 0.0) ++count;
    for (std::size_t k = 1; k < diag.size(); ++k) {
        if (d == 0.0) d = 1e-300;
        d = (diag[k] - sigma) - off2 / d;
        if (d < 0.0) ++count;
    }
    return count;
}

double largest_eigenvalue(const std::vector<double>& diag, double off) {
    const std::size_t n = diag.size();
    double lo = diag[0], hi = diag[0];
    for (double d : diag) {
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    lo -= 2.0 * std::fabs(off);
    hi += 2.0 * std::fabs(off);
    const double scale = std::max({1.0, std::fabs(lo), std::fabs(hi)});
    while (hi - lo > 1e-14 * scale) {
        const double mid = 0.5 * (lo + hi);
        if (count_below(diag, off, mid) == n)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

// Independent route: shifted power iteration on the nonsymmetric centered
// discretization of phi_xx + c phi_x + r phi.  All eigenvalues are real here
// (the matrix is diagonally similar to a symmetric one when |c| h < 2), so
// the dominant eigenvalue of A + sigma I is the rightmost of A.
double power_iteration_principal(const std::vector<double>& diag, double sub, double sup,
                                 std::size_t max_iter, double tol) {
    const std::size_t n = diag.size();
    const double band = std::fabs(sub) + std::fabs(sup);
    double shift = 1.0;
    for (double d : diag) shift = std::max(shift, std::fabs(d) + band);
    shift += 1.0;

    std::vector<double> z(n, 1.0), w(n);
    double lambda = 0.0, prev = 1e300;
    for (std::size_t it = 0; it < max_iter; ++it) {
        for (std::size_t k = 0; k < n; ++k) {
            double acc = (diag[k] + shift) * z[k];
            if (k > 0) acc += sub * z[k - 1];
            if (k + 1 < n) acc += sup * z[k + 1];
            w[k] = acc;
        }
        double nrm = 0.0;
        for (double v : w) nrm = std::max(nrm, std::fabs(v));
        for (std::size_t k = 0; k < n; ++k) z[k] = w[k] / nrm;
        // Rayleigh quotient with the left scaling that symmetrizes A
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            double az = diag[k] * z[k];
            if (k > 0) az += sub * z[k - 1];
            if (k + 1 < n) az += sup * z[k + 1];
            num += z[k] * az;
            den += z[k] * z[k];
        }
        lambda = num / den;
        if (std::fabs(lambda - prev) < tol && it > 10) break;
        prev = lambda;
    }
    return lambda;
}

// The substitution identity checked once per process on a fixed case: the
// Sturm route on the exactly-similar symmetric matrix must agree with the
// power iteration to 1e-8, and the substituted matrix to O(h^2).
void validate_substitution_once() {
    static std::once_flag flag;
    std::call_once(flag, [] {
        const std::size_t n = 64;
        const double L = 3.0, c = 1.5, rbar = 1.0;
        const double h = 2.0 * L / static_cast<double>(n + 1);
        const double inv_h2 = 1.0 / (h * h);
        std::vector<double> diag(n, -2.0 * inv_h2 + rbar);
        const double sub = inv_h2 - 0.5 * c / h;
        const double sup = inv_h2 + 0.5 * c / h;

        const double lam_power = power_iteration_principal(diag, sub, sup, 500000, 1e-13);

        // exact similarity: same diagonal, off = sqrt(sub*sup)
        const double off_sim = std::sqrt(sub * sup);
        const double lam_sim = largest_eigenvalue(diag, off_sim);
        if (std::fabs(lam_power - lam_sim) > 1e-8)
            throw NumericError("eigensolver self-check failed (similarity route)");

        // continuum substitution: diagonal shifted by -c^2/4, off = 1/h^2
        std::vector<double> diag_sub(n, -2.0 * inv_h2 + rbar - 0.25 * c * c);
        const double lam_subst = largest_eigenvalue(diag_sub, inv_h2);
        if (std::fabs(lam_subst - lam_power) > 25.0 * h * h)
            throw NumericError("eigensolver self-check failed (substitution route)");
    });
}

} // namespace

} // namespace spectral_detail

using spectral_detail::assemble_symmetrized;
using spectral_detail::count_below;
using spectral_detail::largest_eigenvalue;

double principal_eigenvalue(const SpectralProblem& prob) {
    spectral_detail::validate_substitution_once();
    const auto m = assemble_symmetrized(prob);
    return largest_eigenvalue(m.diag, m.off);
}

SpectralResult principal_eig(const SpectralProblem& prob) {
    spectral_detail::validate_substitution_once();
    const auto m = assemble_symmetrized(prob);
    const std::size_t n = prob.n;
    const double lambda = largest_eigenvalue(m.diag, m.off);

    // Inverse iteration with a shift just above lambda_max keeps T - sigma I
    // definite; convergence is immediate because sigma - lambda_max is tiny
    // next to the spectral gap.
    const double scale = std::max(1.0, std::fabs(lambda));
    const double sigma = lambda + 1e-10 * scale;
    std::vector<double> psi(n, 1.0);
    std::vector<double> dwork(n), rhs(n);
    std::vector<double> lower(n, m.off), upper(n, m.off);
    for (int sweep = 0; sweep < 4; ++sweep) {
        for (std::size_t k = 0; k < n; ++k) {
            dwork[k] = m.diag[k] - sigma;
            rhs[k] = psi[k];
        }
        thomas_solve({lower.data(), n}, {dwork.data(), n}, {upper.data(), n},
                     {rhs.data(), n});
        double nrm = 0.0;
        for (double v : rhs) nrm = std::max(nrm, std::fabs(v));
        if (!(nrm > 0.0) || !std::isfinite(nrm))
            throw NumericError("inverse iteration failed to produce a finite vector");
        for (std::size_t k = 0; k < n; ++k) psi[k] = rhs[k] / nrm;
    }
    // principal eigenvector of a Jacobi matrix is signed; make it positive
    std::size_t imax = 0;
    for (std::size_t k = 1; k < n; ++k)
        if (std::fabs(psi[k]) > std::fabs(psi[imax])) imax = k;
    if (psi[imax] < 0.0)
        for (double& v : psi) v = -v;

    // residual in the symmetric system
    double res = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double az = m.diag[k] * psi[k];
        if (k > 0) az += m.off * psi[k - 1];
        if (k + 1 < n) az += m.off * psi[k + 1];
        res = std::max(res, std::fabs(az - lambda * psi[k]));
    }
    const double r_sup = constants(prob.env).r_star;
    if (res > 1e-8 * (std::fabs(lambda) + r_sup + 1.0))
        throw NumericError("eigenpair residual exceeds contract; grid too fine for double precision");

    // map back phi = e^{-cx/2} psi in log space (large c L would overflow)
    SpectralResult out;
    out.lambda_L = lambda;
    out.L = prob.L;
    out.residual = res;
    out.phi.grid = Grid(-prob.L, prob.L, n + 2);
    out.phi.values.assign(n + 2, 0.0);
    std::vector<double> logphi(n, -std::numeric_limits<double>::infinity());
    double lmax = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        if (psi[k] > 0.0) {
            logphi[k] = std::log(psi[k]) - 0.5 * prob.c * m.x[k];
            lmax = std::max(lmax, logphi[k]);
        }
    }
    if (!std::isfinite(lmax)) throw NumericError("eigenvector vanished after sign fix");
    for (std::size_t k = 0; k < n; ++k)
        out.phi.values[k + 1] = std::isfinite(logphi[k]) ? std::exp(logphi[k] - lmax) : 0.0;
    return out;
}

LambdaInfResult lambda_infinity(double c, const EnvironmentProfile& env, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("lambda_infinity needs tol > 0");
    LambdaInfResult out;
    out.tol = tol;

    const double h_target = std::min(0.05, env.width / 16.0);
    const double L0 = 10.0 * env.width;
    const double L_cap = 1e6 * env.width;

    // Cell count doubles with L so the spacing is exactly constant and the
    // grids nest; domain monotonicity of lambda_L then holds discretely.
    auto base_cells =
        std::max<std::size_t>(17, static_cast<std::size_t>(std::llround(2.0 * L0 / h_target)));

    auto solve_at = [&](double length, std::size_t cells) {
        SpectralProblem prob{c, env, length, cells - 1};
        return principal_eigenvalue(prob);
    };

    double L = L0;
    std::size_t cells = base_cells;
    double lam = solve_at(L, cells);
    out.history.emplace_back(L, lam);
    while (true) {
        const double L2 = 2.0 * L;
        if (L2 > L_cap)
            throw NumericError("lambda_infinity: no convergence before L reached 1e6*width");
        cells *= 2;
        const double lam2 = solve_at(L2, cells);
        out.history.emplace_back(L2, lam2);
        if (lam2 < lam - 1e-10 * (1.0 + std::fabs(lam)))
            throw NumericError("lambda_L failed to increase under L-doubling");
        const double inc = lam2 - lam;
        L = L2;
        lam = lam2;
        if (std::fabs(inc) < tol) break;
    }
    out.lambda_inf = lam;
    out.L_used = L;
    return out;
}

double nu_star(double c, const EnvConstants& env) {
    const double s = std::sqrt(8.0 * env.r_star + c * c) + std::fabs(c);
    return 0.25 * s * s;
}

PhiGradientReport check_phi_gradient_bound(const SpectralResult& result, double c,
                                           const EnvConstants& env) {
    PhiGradientReport rep;
    rep.bound_constant = 0.5 * (std::sqrt(8.0 * env.r_star + c * c) + std::fabs(c));
    const Field& phi = result.phi;
    const double h = phi.grid.h();
    rep.tol = 10.0 * h;

    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < phi.size(); ++i) {
        const double x = phi.grid.node(i);
        if (std::fabs(x) > 0.5 * result.L) continue;
        const double dphi = (phi[i + 1] - phi[i - 1]) / (2.0 * h);
        worst = std::max(worst, std::fabs(dphi) - rep.bound_constant * phi[i]);
    }
    rep.max_violation = worst;
    rep.pass = worst <= rep.tol;
    return rep;
}

} // namespace kslab
