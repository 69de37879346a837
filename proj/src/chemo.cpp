#include "kslab/chemo.hpp"

#include "kslab/errors.hpp"
#include "kslab/kernels.hpp"
#include "kslab/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <set>
#include <stdexcept>

namespace kslab {

void ChemoParams::validate() const {
    if (!(chi >= 0.0)) throw std::invalid_argument("chi must be >= 0");
    if (!(nu > 0.0)) throw std::invalid_argument("nu must be > 0");
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be > 0");
    if (!(b > 0.0)) throw std::invalid_argument("b must be > 0");
}

double green_kernel_closed_form(double z, double nu) {
    const double s = std::sqrt(nu);
    return std::exp(-s * std::fabs(z)) / (2.0 * s);
}

namespace {

// Adaptive Simpson on [a,b] with absolute tolerance.
template <typename F>
double adaptive_simpson(F f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(F f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

} // namespace

double green_kernel_quadrature(double z, double nu, double tol) {
    // Substituting s = q^2 removes the 1/sqrt(s) endpoint singularity:
    //   int_0^inf e^{-nu s} e^{-z^2/4s} / sqrt(4 pi s) ds
    //     = (1/sqrt(pi)) int_0^inf e^{-nu q^2 - z^2/(4 q^2)} dq.
    const double az = std::fabs(z);
    auto f = [&](double q) {
        if (q <= 0.0) return 0.0;
        return std::exp(-nu * q * q - az * az / (4.0 * q * q));
    };
    const double q_max = std::sqrt(50.0 / nu) + az; // e^{-nu q^2} < e^{-50} beyond
    const double inv_sqrt_pi = 1.0 / std::sqrt(4.0 * std::atan(1.0));
    return inv_sqrt_pi * integrate(f, 0.0, q_max, tol);
}

namespace {

// Closed kernel vs the double-integral definition, checked once per nu seen.
void validate_kernel_once(double nu) {
    static std::mutex mtx;
    static std::set<double> validated;
    std::lock_guard<std::mutex> lock(mtx);
    if (validated.count(nu)) return;
    for (double z : {0.0, 0.5, 1.0, 2.0}) {
        const double quad = green_kernel_quadrature(z, nu);
        const double closed = green_kernel_closed_form(z, nu);
        if (std::fabs(quad - closed) > 1e-8)
            throw NumericError("green kernel identity failed quadrature validation");
    }
    validated.insert(nu);
}

void require_nonnegative(const Field& u) {
    const double mn = kernels::min_val(u.values.data(), u.size());
    if (mn < -1e-10) throw std::invalid_argument("u has negative entries below -1e-10");
}

} // namespace

Field solve_v_kernel(const Field& u, const ChemoParams& params) {
    params.validate();
    require_nonnegative(u);
    validate_kernel_once(params.nu);

    const std::size_t n = u.size();
    const double h = u.grid.h();
    const double root_nu = std::sqrt(params.nu);
    const double scale = params.mu / (2.0 * root_nu);

    // ktab[d] = exp(-sqrt(nu) h d); trapezoid weights fold into wu.
    std::vector<double> ktab(n), wu(n);
    for (std::size_t d = 0; d < n; ++d) ktab[d] = std::exp(-root_nu * h * static_cast<double>(d));
    for (std::size_t j = 0; j < n; ++j) wu[j] = h * u[j];
    wu.front() *= 0.5;
    wu.back() *= 0.5;

    Field v(u.grid);
    kernels::sym_kernel_correlate(wu.data(), ktab.data(), n, scale, v.values.data());
    return v;
}

void solve_v_tridiag_into(const Field& u, const ChemoParams& params, Field& v,
                          std::vector<double>& work) {
    const std::size_t n = u.size();
    const double h = u.grid.h();
    const double inv_h2 = 1.0 / (h * h);
    const double root_nu = std::sqrt(params.nu);

    v.grid = u.grid;
    v.values.resize(n);
    work.resize(3 * n);
    double* lower = work.data();
    double* diag = work.data() + n;
    double* upper = work.data() + 2 * n;

    // -v'' + nu v = mu u; ghost-node elimination of the Robin ends keeps
    // second order.
    for (std::size_t i = 0; i < n; ++i) {
        lower[i] = -inv_h2;
        upper[i] = -inv_h2;
        diag[i] = 2.0 * inv_h2 + params.nu;
        v[i] = params.mu * u[i];
    }
    diag[0] += 2.0 * root_nu / h;
    upper[0] = -2.0 * inv_h2;
    diag[n - 1] += 2.0 * root_nu / h;
    lower[n - 1] = -2.0 * inv_h2;

    thomas_solve({lower, n}, {diag, n}, {upper, n}, {v.values.data(), n});
}

Field solve_v_tridiag(const Field& u, const ChemoParams& params) {
    params.validate();
    require_nonnegative(u);

    Field v;
    std::vector<double> work;
    solve_v_tridiag_into(u, params, v, work);

    // Discrete residual sanity: far below the stated 10 h^2 ||mu u|| budget.
    const std::size_t n = u.size();
    const double h = u.grid.h();
    const double inv_h2 = 1.0 / (h * h);
    double res = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double lap = (v[i - 1] - 2.0 * v[i] + v[i + 1]) * inv_h2;
        res = std::max(res, std::fabs(lap - params.nu * v[i] + params.mu * u[i]));
    }
    const double mu_u = params.mu * kernels::max_abs(u.values.data(), n);
    if (res > 10.0 * h * h * mu_u + 1e-9)
        throw NumericError("tridiagonal v-solve residual out of bounds");
    return v;
}

Field gradient_v(const Field& v) {
    const std::size_t n = v.size();
    const double h = v.grid.h();
    Field g(v.grid);
    if (n < 3) return g;
    for (std::size_t i = 1; i + 1 < n; ++i) g[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    g[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    g[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    return g;
}

PsiBoundReport check_psi_bound(const Field& u, const ChemoParams& params) {
    const Field v = solve_v_tridiag(u, params);
    const Field vx = gradient_v(v);
    const double root_nu = std::sqrt(params.nu);

    PsiBoundReport rep;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i)
        worst = std::max(worst, std::fabs(vx[i]) - root_nu * v[i]);
    rep.max_violation = worst;
    rep.tol = 10.0 * v.grid.h() * kernels::max_abs(v.values.data(), v.size());
    rep.pass = rep.max_violation <= rep.tol;
    return rep;
}

} // namespace kslab
