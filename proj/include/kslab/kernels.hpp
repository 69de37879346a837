#ifndef KSLAB_KERNELS_HPP
#define KSLAB_KERNELS_HPP

#include <cstddef>
#include <string>

namespace kslab::kernels {

// Hot inner loops of the solver, in scalar reference form and (on x86-64
// with AVX2) vectorized form.  The backend is picked once at startup from
// CPUID; force() pins it, which the equivalence tests and the --kernels
// CLI flag use.  Variants may differ from the reference by reassociation
// and FMA contraction only.

enum class Backend { Scalar, Avx2 };

Backend active();
bool supported(Backend b);
void force(Backend b);           // throws if unsupported on this machine
void reset();                    // back to auto-detection
std::string name(Backend b);

// a[i] = chi_over_h * (v[i+1] - v[i]) - frame_speed, for the n-1 faces of n nodes.
void face_velocity(const double* v, std::size_t n, double chi_over_h,
                   double frame_speed, double* a);

// Total face flux (diffusive + upwinded advective):
//   flux[i] = (u[i+1] - u[i]) * inv_h - a[i] * (a[i] > 0 ? u[i] : u[i+1])
void upwind_flux(const double* u, const double* a, std::size_t n, double inv_h,
                 double* flux);

// Forward Euler update with zero-flux ends and logistic reaction:
//   out[i] = u[i] + dt * ((flux[i] - flux[i-1]) * inv_h + u[i] * (r[i] - b u[i]))
// flux[-1] and flux[n-1] are taken as 0.  Negative results are clipped to 0;
// returns the total clipped mass (sum of magnitudes, not scaled by h).
double euler_update(const double* u, const double* flux, const double* r,
                    std::size_t n, double inv_h, double dt, double b, double* out);

// out[i] = scale * sum_j wu[j] * ktab[|i-j|], the screened-Poisson Green
// convolution against a precomputed exponential table (ktab has n entries).
void sym_kernel_correlate(const double* wu, const double* ktab, std::size_t n,
                          double scale, double* out);

double max_val(const double* x, std::size_t n);
double min_val(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);
double sum(const double* x, std::size_t n);

// The scalar reference implementations, callable directly (the equivalence
// tests compare the dispatched variants against these).
namespace scalar {
void face_velocity(const double* v, std::size_t n, double chi_over_h,
                   double frame_speed, double* a);
void upwind_flux(const double* u, const double* a, std::size_t n, double inv_h,
                 double* flux);
double euler_update(const double* u, const double* flux, const double* r,
                    std::size_t n, double inv_h, double dt, double b, double* out);
void sym_kernel_correlate(const double* wu, const double* ktab, std::size_t n,
                          double scale, double* out);
double max_val(const double* x, std::size_t n);
double min_val(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);
double sum(const double* x, std::size_t n);
} // namespace scalar

} // namespace kslab::kernels

#endif
