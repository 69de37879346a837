#ifndef KSLAB_CHEMO_HPP
#define KSLAB_CHEMO_HPP

#include "kslab/grid.hpp"

namespace kslab {

struct ChemoParams {
    double chi = 0.0; // chemotaxis sensitivity, >= 0
    double nu = 1.0;  // attractant degradation rate, > 0
    double mu = 1.0;  // attractant production rate, > 0
    double b = 1.0;   // self-limitation, > 0

    void validate() const;
};

/** Free-space Green kernel of -d^2/dx^2 + nu: exp(-sqrt(nu)|z|) / (2 sqrt(nu)). */
double green_kernel_closed_form(double z, double nu);

/** The same kernel from its heat-semigroup double integral,
 *  int_0^inf exp(-nu s) exp(-z^2/4s) / sqrt(4 pi s) ds,
 *  by adaptive quadrature.  Independent route used to validate the closed form. */
double green_kernel_quadrature(double z, double nu, double tol = 1e-10);

/** v(x_i) = sum_j w_j * (mu/(2 sqrt(nu))) exp(-sqrt(nu)|x_i-x_j|) u(x_j),
 *  trapezoid weights, u treated as 0 outside the grid.
 *  Rejects u entries below -1e-10. */
Field solve_v_kernel(const Field& u, const ChemoParams& params);

/** Second-order centered solve of v_xx - nu v + mu u = 0 with outward-decay
 *  Robin ends (v' = +sqrt(nu) v at x_min, v' = -sqrt(nu) v at x_max). */
Field solve_v_tridiag(const Field& u, const ChemoParams& params);

/** Allocation-free variant for the time loop; work must have size n. */
void solve_v_tridiag_into(const Field& u, const ChemoParams& params, Field& v,
                          std::vector<double>& work);

/** Centered differences in the interior, second-order one-sided at the ends. */
Field gradient_v(const Field& v);

struct PsiBoundReport {
    double max_violation = 0.0; // max over nodes of |v_x| - sqrt(nu) v
    double tol = 0.0;           // 10 h ||v||_inf
    bool pass = false;
};

/** Checks |d/dx Psi| <= sqrt(nu) Psi on the discrete solve for nonnegative u. */
PsiBoundReport check_psi_bound(const Field& u, const ChemoParams& params);

} // namespace kslab

#endif
