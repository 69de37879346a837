#ifndef KSLAB_SPECTRAL_HPP
#define KSLAB_SPECTRAL_HPP

#include "kslab/environment.hpp"
#include "kslab/grid.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace kslab {

/** Principal eigenvalue problem phi_xx + c phi_x + r(x) phi = lambda phi on
 *  (-L, L), phi(+-L) = 0, with the profile frozen at t = 0. */
struct SpectralProblem {
    double c = 0.0;
    EnvironmentProfile env;
    double L = 1.0;
    std::size_t n = 255; // interior nodes; spacing 2L/(n+1)
};

struct SpectralResult {
    double lambda_L = 0.0;
    Field phi;           // on [-L, L] including the zero ends, max-normalized
    double L = 0.0;
    double residual = 0.0; // ||T psi - lambda psi||_inf / ||psi||_inf, symmetric system
};

/** Solves via phi = e^{-cx/2} psi, which turns the problem into the
 *  self-adjoint psi_xx + (r(x) - c^2/4) psi = lambda psi; the symmetric
 *  tridiagonal matrix is handled by Sturm bisection plus inverse iteration.
 *  The substitution is validated once per process against an independent
 *  nonsymmetric eigensolve. */
SpectralResult principal_eig(const SpectralProblem& prob);

/** Same solver without the eigenvector (Sturm bisection only). */
double principal_eigenvalue(const SpectralProblem& prob);

struct LambdaInfResult {
    double lambda_inf = 0.0;
    double L_used = 0.0;
    std::vector<std::pair<double, double>> history; // (L, lambda_L) per doubling
    double tol = 0.0;

    /** Sign decisions are withheld when |lambda_inf| < 2 tol. */
    bool indeterminate() const { return std::fabs(lambda_inf) < 2.0 * tol; }
};

/** lim_{L -> inf} lambda_L by doubling L from 10*width until the increment
 *  drops below tol; monotone increase is asserted at each doubling. */
LambdaInfResult lambda_infinity(double c, const EnvironmentProfile& env, double tol = 1e-4);

/** nu^* = (sqrt(8 r^* + c^2) + |c|)^2 / 4. */
double nu_star(double c, const EnvConstants& env);

struct PhiGradientReport {
    double bound_constant = 0.0; // (sqrt(8 r^* + c^2) + |c|)/2
    double max_violation = 0.0;  // max over checked nodes of |phi'| - K phi
    double tol = 0.0;
    bool pass = false;
};

/** |phi'| <= (sqrt(8 r^* + c^2)+|c|)/2 * phi, checked on |x| <= L/2 where the
 *  result stands in for phi_infinity. */
PhiGradientReport check_phi_gradient_bound(const SpectralResult& result, double c,
                                           const EnvConstants& env);

// Building blocks shared with the test oracles.
namespace spectral_detail {

struct SymTridiag {
    std::vector<double> diag;
    double off = 0.0; // constant off-diagonal
    std::vector<double> x; // node coordinates
    double h = 0.0;
};

/** Matrix of the substituted problem psi_xx + (r - c^2/4) psi. */
SymTridiag assemble_symmetrized(const SpectralProblem& prob);

/** Number of eigenvalues strictly below sigma (Sturm/LDL^T pivot count). */
std::size_t count_below(const std::vector<double>& diag, double off, double sigma);

/** Largest eigenvalue by bisection to near machine precision. */
double largest_eigenvalue(const std::vector<double>& diag, double off);

} // namespace spectral_detail

} // namespace kslab

#endif
