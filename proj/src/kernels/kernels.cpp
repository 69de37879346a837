#include "kslab/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kslab::kernels {

namespace scalar {

void face_velocity(const double* v, std::size_t n, double chi_over_h,
                   double frame_speed, double* a) {
    for (std::size_t i = 0; i + 1 < n; ++i)
        a[i] = chi_over_h * (v[i + 1] - v[i]) - frame_speed;
}

void upwind_flux(const double* u, const double* a, std::size_t n, double inv_h,
                 double* flux) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double up = a[i] > 0.0 ? u[i] : u[i + 1];
        flux[i] = (u[i + 1] - u[i]) * inv_h - a[i] * up;
    }
}

double euler_update(const double* u, const double* flux, const double* r,
                    std::size_t n, double inv_h, double dt, double b, double* out) {
    double clipped = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f_right = (i + 1 < n) ? flux[i] : 0.0;
        const double f_left = (i > 0) ? flux[i - 1] : 0.0;
        double w = u[i] + dt * ((f_right - f_left) * inv_h + u[i] * (r[i] - b * u[i]));
        if (w < 0.0) {
            clipped -= w;
            w = 0.0;
        }
        out[i] = w;
    }
    return clipped;
}

void sym_kernel_correlate(const double* wu, const double* ktab, std::size_t n,
                          double scale, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < i; ++j) acc += wu[j] * ktab[i - j];
        for (std::size_t j = i; j < n; ++j) acc += wu[j] * ktab[j - i];
        out[i] = scale * acc;
    }
}

double max_val(const double* x, std::size_t n) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] > m) m = x[i];
    return m;
}

double min_val(const double* x, std::size_t n) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] < m) m = x[i];
    return m;
}

double max_abs(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = std::fabs(x[i]);
        if (v > m) m = v;
    }
    return m;
}

double sum(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
}

} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define KSLAB_HAVE_AVX2_BUILD 1
namespace avx2 {
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
} // namespace avx2
#endif

namespace {

Backend detect() {
#ifdef KSLAB_HAVE_AVX2_BUILD
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return Backend::Avx2;
#endif
    return Backend::Scalar;
}

Backend g_backend = detect();

} // namespace

Backend active() { return g_backend; }

bool supported(Backend b) {
    if (b == Backend::Scalar) return true;
#ifdef KSLAB_HAVE_AVX2_BUILD
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

void force(Backend b) {
    if (!supported(b)) throw std::runtime_error("kernel backend not supported: " + name(b));
    g_backend = b;
}

void reset() { g_backend = detect(); }

std::string name(Backend b) { return b == Backend::Scalar ? "scalar" : "avx2"; }

void face_velocity(const double* v, std::size_t n, double chi_over_h,
                   double frame_speed, double* a) {
#ifdef KSLAB_HAVE_AVX2_BUILD
    if (g_backend == Backend::Avx2) return avx2::face_velocity(v, n, chi_over_h, frame_speed, a);
#endif
    scalar::face_velocity(v, n, chi_over_h, frame_speed, a);
}

void upwind_flux(const double* u, const double* a, std::size_t n, double inv_h, double* flux) {
#ifdef KSLAB_HAVE_AVX2_BUILD
    if (g_backend == Backend::Avx2) return avx2::upwind_flux(u, a, n, inv_h, flux);
#endif
    scalar::upwind_flux(u, a, n, inv_h, flux);
}

double euler_update(const double* u, const double* flux, const double* r,
                    std::size_t n, double inv_h, double dt, double b, double* out) {
#ifdef KSLAB_HAVE_AVX2_BUILD
    if (g_backend == Backend::Avx2)
        return avx2::euler_update(u, flux, r, n, inv_h, dt, b, out);
#endif
    return scalar::euler_update(u, flux, r, n, inv_h, dt, b, out);
}

void sym_kernel_correlate(const double* wu, const double* ktab, std::size_t n,
                          double scale, double* out) {
#ifdef KSLAB_HAVE_AVX2_BUILD
    if (g_backend == Backend::Avx2) return avx2::sym_kernel_correlate(wu, ktab, n, scale, out);
#endif
    scalar::sym_kernel_correlate(wu, ktab, n, scale, out);
}

double max_val(const double* x, std::size_t n) {
#ifdef KSLAB_HAVE_AVX2_BUILD
    if (g_backend == Backend::Avx2) return avx2::max_val(x, n);
#endif
    return scalar::max_val(x, n);
}

double min_val(const double* x, std::size_t n) {
#ifdef KSLAB_HAVE_AVX2_BUILD
    if (g_backend == Backend::Avx2) return avx2::min_val(x, n);
#endif
    return scalar::min_val(x, n);
}

double max_abs(const double* x, std::size_t n) {
#ifdef KSLAB_HAVE_AVX2_BUILD
    if (g_backend == Backend::Avx2) return avx2::max_abs(x, n);
#endif
    return scalar::max_abs(x, n);
}

double sum(const double* x, std::size_t n) {
#ifdef KSLAB_HAVE_AVX2_BUILD
    if (g_backend == Backend::Avx2) return avx2::sum(x, n);
#endif
    return scalar::sum(x, n);
}

} // namespace kslab::kernels
