// AVX2/FMA variants of the scalar kernels.  Compiled with -mavx2 -mfma and
// reached only through the runtime dispatch in kernels.cpp, so the rest of
// the build stays baseline-ISA clean.

#if defined(__x86_64__) || defined(_M_X64)

#include <cstddef>
#include <cmath>
#include <immintrin.h>

namespace kslab::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline double hmin(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_min_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_min_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

} // namespace

void face_velocity(const double* v, std::size_t n, double chi_over_h,
                   double frame_speed, double* a) {
    if (n < 2) return;
    const std::size_t m = n - 1;
    const __m256d k = _mm256_set1_pd(chi_over_h);
    const __m256d fs = _mm256_set1_pd(frame_speed);
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        __m256d v0 = _mm256_loadu_pd(v + i);
        __m256d v1 = _mm256_loadu_pd(v + i + 1);
        _mm256_storeu_pd(a + i, _mm256_fmsub_pd(k, _mm256_sub_pd(v1, v0), fs));
    }
    for (; i < m; ++i) a[i] = chi_over_h * (v[i + 1] - v[i]) - frame_speed;
}

void upwind_flux(const double* u, const double* a, std::size_t n, double inv_h,
                 double* flux) {
    if (n < 2) return;
    const std::size_t m = n - 1;
    const __m256d ih = _mm256_set1_pd(inv_h);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        __m256d u0 = _mm256_loadu_pd(u + i);
        __m256d u1 = _mm256_loadu_pd(u + i + 1);
        __m256d av = _mm256_loadu_pd(a + i);
        __m256d pos = _mm256_cmp_pd(av, zero, _CMP_GT_OQ);
        __m256d up = _mm256_blendv_pd(u1, u0, pos);
        __m256d diff = _mm256_mul_pd(_mm256_sub_pd(u1, u0), ih);
        _mm256_storeu_pd(flux + i, _mm256_fnmadd_pd(av, up, diff));
    }
    for (; i < m; ++i) {
        const double up = a[i] > 0.0 ? u[i] : u[i + 1];
        flux[i] = (u[i + 1] - u[i]) * inv_h - a[i] * up;
    }
}

double euler_update(const double* u, const double* flux, const double* r,
                    std::size_t n, double inv_h, double dt, double b, double* out) {
    double clipped = 0.0;
    auto scalar_at = [&](std::size_t i) {
        const double f_right = (i + 1 < n) ? flux[i] : 0.0;
        const double f_left = (i > 0) ? flux[i - 1] : 0.0;
        double w = u[i] + dt * ((f_right - f_left) * inv_h + u[i] * (r[i] - b * u[i]));
        if (w < 0.0) {
            clipped -= w;
            w = 0.0;
        }
        out[i] = w;
    };
    if (n < 6) {
        for (std::size_t i = 0; i < n; ++i) scalar_at(i);
        return clipped;
    }
    scalar_at(0);
    const __m256d ih = _mm256_set1_pd(inv_h);
    const __m256d vdt = _mm256_set1_pd(dt);
    const __m256d vb = _mm256_set1_pd(b);
    const __m256d zero = _mm256_setzero_pd();
    __m256d clip_acc = _mm256_setzero_pd();
    std::size_t i = 1;
    for (; i + 4 <= n - 1; i += 4) {
        __m256d uu = _mm256_loadu_pd(u + i);
        __m256d fr = _mm256_loadu_pd(flux + i);
        __m256d fl = _mm256_loadu_pd(flux + i - 1);
        __m256d rr = _mm256_loadu_pd(r + i);
        __m256d react = _mm256_mul_pd(uu, _mm256_fnmadd_pd(vb, uu, rr));
        __m256d rhs = _mm256_fmadd_pd(_mm256_sub_pd(fr, fl), ih, react);
        __m256d w = _mm256_fmadd_pd(vdt, rhs, uu);
        __m256d neg = _mm256_min_pd(w, zero);
        clip_acc = _mm256_sub_pd(clip_acc, neg);
        _mm256_storeu_pd(out + i, _mm256_max_pd(w, zero));
    }
    clipped += hsum(clip_acc);
    for (; i < n; ++i) scalar_at(i);
    return clipped;
}

void sym_kernel_correlate(const double* wu, const double* ktab, std::size_t n,
                          double scale, double* out) {
    // out[i] = g[i] k[0] + sum_d k[d] (g[i-d] + g[i+d]); the table is
    // monotone decreasing, entries below 1e-18 contribute nothing at
    // double precision.
    for (std::size_t i = 0; i < n; ++i) out[i] = ktab[0] * wu[i];
    for (std::size_t d = 1; d < n; ++d) {
        const double kd = ktab[d];
        if (kd < 1e-18) break;
        const std::size_t m = n - d;
        if (d < 4) {
            // the two in-place update ranges overlap for small shifts
            for (std::size_t i = 0; i < m; ++i) {
                out[i] += kd * wu[i + d];
                out[i + d] += kd * wu[i];
            }
            continue;
        }
        const __m256d vk = _mm256_set1_pd(kd);
        std::size_t i = 0;
        for (; i + 4 <= m; i += 4) {
            __m256d lo = _mm256_loadu_pd(out + i);
            __m256d hi = _mm256_loadu_pd(out + i + d);
            __m256d glo = _mm256_loadu_pd(wu + i);
            __m256d ghi = _mm256_loadu_pd(wu + i + d);
            _mm256_storeu_pd(out + i, _mm256_fmadd_pd(vk, ghi, lo));
            _mm256_storeu_pd(out + i + d, _mm256_fmadd_pd(vk, glo, hi));
        }
        for (; i < m; ++i) {
            out[i] += kd * wu[i + d];
            out[i + d] += kd * wu[i];
        }
    }
    const __m256d vs = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(vs, _mm256_loadu_pd(out + i)));
    for (; i < n; ++i) out[i] *= scale;
}

double max_val(const double* x, std::size_t n) {
    double m = -HUGE_VAL;
    std::size_t i = 0;
    if (n >= 4) {
        __m256d acc = _mm256_loadu_pd(x);
        for (i = 4; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(x + i));
        m = hmax(acc);
    }
    for (; i < n; ++i)
        if (x[i] > m) m = x[i];
    return m;
}

double min_val(const double* x, std::size_t n) {
    double m = HUGE_VAL;
    std::size_t i = 0;
    if (n >= 4) {
        __m256d acc = _mm256_loadu_pd(x);
        for (i = 4; i + 4 <= n; i += 4) acc = _mm256_min_pd(acc, _mm256_loadu_pd(x + i));
        m = hmin(acc);
    }
    for (; i < n; ++i)
        if (x[i] < m) m = x[i];
    return m;
}

double max_abs(const double* x, std::size_t n) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    double m = 0.0;
    std::size_t i = 0;
    if (n >= 4) {
        __m256d acc = _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(x));
        for (i = 4; i + 4 <= n; i += 4)
            acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(x + i)));
        m = hmax(acc);
    }
    for (; i < n; ++i) {
        const double v = std::fabs(x[i]);
        if (v > m) m = v;
    }
    return m;
}

double sum(const double* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
    }
    for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += x[i];
    return s;
}

} // namespace kslab::kernels::avx2

#endif
