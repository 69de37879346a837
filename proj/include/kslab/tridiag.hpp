#ifndef KSLAB_TRIDIAG_HPP
#define KSLAB_TRIDIAG_HPP

#include <cmath>
#include <cstddef>
#include <span>

namespace kslab {

// Thomas algorithm.  lower[i] multiplies x[i-1] in row i (lower[0] unused),
// upper[i] multiplies x[i+1] (upper[n-1] unused).  diag and rhs are
// overwritten; the solution lands in rhs.  Pivots are floored away from
// zero so deliberately near-singular solves (inverse iteration) stay finite.
inline void thomas_solve(std::span<const double> lower, std::span<double> diag,
                         std::span<const double> upper, std::span<double> rhs) {
    const std::size_t n = diag.size();
    auto floor_pivot = [](double p) {
        if (std::fabs(p) < 1e-300) return p < 0.0 ? -1e-300 : 1e-300;
        return p;
    };
    diag[0] = floor_pivot(diag[0]);
    for (std::size_t i = 1; i < n; ++i) {
        const double m = lower[i] / diag[i - 1];
        diag[i] = floor_pivot(diag[i] - m * upper[i - 1]);
        rhs[i] -= m * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

} // namespace kslab

#endif
