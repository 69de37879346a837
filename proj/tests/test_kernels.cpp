#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kslab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <vector>

using namespace kslab;
namespace k = kslab::kernels;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = d(rng);
    return v;
}

} // namespace

TEST_CASE("scalar kernels match hand-computed values") {
    const std::vector<double> v{0.0, 1.0, 3.0, 2.0};
    std::vector<double> a(3);
    k::scalar::face_velocity(v.data(), 4, 2.0, 0.5, a.data());
    CHECK(a[0] == doctest::Approx(1.5));  // 2*(1-0) - 0.5
    CHECK(a[1] == doctest::Approx(3.5));  // 2*(3-1) - 0.5
    CHECK(a[2] == doctest::Approx(-2.5)); // 2*(2-3) - 0.5

    const std::vector<double> u{1.0, 2.0, 4.0, 1.0};
    std::vector<double> flux(3);
    k::scalar::upwind_flux(u.data(), a.data(), 4, 1.0, flux.data());
    CHECK(flux[0] == doctest::Approx((2.0 - 1.0) - 1.5 * 1.0)); // a>0, upwind u[0]
    CHECK(flux[1] == doctest::Approx((4.0 - 2.0) - 3.5 * 2.0));
    CHECK(flux[2] == doctest::Approx((1.0 - 4.0) + 2.5 * 1.0)); // a<0, upwind u[3]
}

TEST_CASE("euler_update clips negatives and reports the clipped mass") {
    const std::vector<double> u{0.1, 0.0, 0.2};
    const std::vector<double> flux{-1.0, 0.0};
    const std::vector<double> r{0.0, 0.0, 0.0};
    std::vector<double> out(3);
    // node 0: 0.1 + 0.5*((-1 - 0) + 0.1*(0 - 0.1)) = -0.405 -> clipped
    const double clipped = k::scalar::euler_update(u.data(), flux.data(), r.data(), 3, 1.0,
                                                   0.5, 1.0, out.data());
    CHECK(out[0] == 0.0);
    CHECK(clipped == doctest::Approx(0.405));
    CHECK(out[1] == doctest::Approx(0.0 + 0.5 * (0.0 - (-1.0))));
    CHECK(out[2] == doctest::Approx(0.2 + 0.5 * (0.0 - 0.0) - 0.5 * 0.2 * 0.2).epsilon(1e-12));
}

TEST_CASE("sym_kernel_correlate equals a brute-force double loop") {
    std::mt19937_64 rng(42u);
    for (std::size_t n : {5u, 17u, 64u, 301u}) {
        const auto wu = random_vec(rng, n, 0.0, 2.0);
        std::vector<double> ktab(n);
        for (std::size_t d = 0; d < n; ++d) ktab[d] = std::exp(-0.05 * static_cast<double>(d));
        std::vector<double> out(n);
        k::scalar::sym_kernel_correlate(wu.data(), ktab.data(), n, 0.7, out.data());
        for (std::size_t i = 0; i < n; ++i) {
            double ref = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                ref += wu[j] * ktab[static_cast<std::size_t>(
                                   std::llabs(static_cast<long long>(i) -
                                              static_cast<long long>(j)))];
            CHECK(out[i] == doctest::Approx(0.7 * ref).epsilon(1e-12));
        }
    }
}

TEST_CASE("reductions agree with the standard library") {
    std::mt19937_64 rng(7u);
    const auto v = random_vec(rng, 1003, -5.0, 5.0);
    CHECK(k::scalar::max_val(v.data(), v.size()) ==
          *std::max_element(v.begin(), v.end()));
    CHECK(k::scalar::min_val(v.data(), v.size()) ==
          *std::min_element(v.begin(), v.end()));
    double ma = 0.0;
    for (double x : v) ma = std::max(ma, std::fabs(x));
    CHECK(k::scalar::max_abs(v.data(), v.size()) == ma);
    CHECK(k::scalar::sum(v.data(), v.size()) ==
          doctest::Approx(std::accumulate(v.begin(), v.end(), 0.0)).epsilon(1e-12));
}

TEST_CASE("dispatched variants are equivalent to the scalar reference") {
    if (!k::supported(k::Backend::Avx2)) {
        MESSAGE("AVX2 not available; dispatch equivalence trivially scalar");
        return;
    }
    k::force(k::Backend::Avx2);
    std::mt19937_64 rng(123u);
    for (std::size_t n : {2u, 3u, 5u, 8u, 33u, 500u, 1001u}) {
        const auto u = random_vec(rng, n, 0.0, 3.0);
        const auto v = random_vec(rng, n, -1.0, 1.0);
        const auto r = random_vec(rng, n, -1.0, 1.0);

        std::vector<double> a_s(n - 1), a_v(n - 1);
        k::scalar::face_velocity(v.data(), n, 3.7, 0.25, a_s.data());
        k::face_velocity(v.data(), n, 3.7, 0.25, a_v.data());
        for (std::size_t i = 0; i + 1 < n; ++i)
            CHECK(a_v[i] == doctest::Approx(a_s[i]).epsilon(1e-13));

        std::vector<double> f_s(n - 1), f_v(n - 1);
        k::scalar::upwind_flux(u.data(), a_s.data(), n, 10.0, f_s.data());
        k::upwind_flux(u.data(), a_s.data(), n, 10.0, f_v.data());
        for (std::size_t i = 0; i + 1 < n; ++i)
            CHECK(f_v[i] == doctest::Approx(f_s[i]).epsilon(1e-13));

        std::vector<double> o_s(n), o_v(n);
        const double c_s = k::scalar::euler_update(u.data(), f_s.data(), r.data(), n, 10.0,
                                                   0.001, 1.0, o_s.data());
        const double c_v =
            k::euler_update(u.data(), f_s.data(), r.data(), n, 10.0, 0.001, 1.0, o_v.data());
        for (std::size_t i = 0; i < n; ++i)
            CHECK(o_v[i] == doctest::Approx(o_s[i]).epsilon(1e-13));
        CHECK(c_v == doctest::Approx(c_s).epsilon(1e-12));

        std::vector<double> ktab(n);
        for (std::size_t d = 0; d < n; ++d) ktab[d] = std::exp(-0.02 * static_cast<double>(d));
        std::vector<double> k_s(n), k_v(n);
        k::scalar::sym_kernel_correlate(u.data(), ktab.data(), n, 0.5, k_s.data());
        k::sym_kernel_correlate(u.data(), ktab.data(), n, 0.5, k_v.data());
        for (std::size_t i = 0; i < n; ++i)
            CHECK(k_v[i] == doctest::Approx(k_s[i]).epsilon(1e-12));

        CHECK(k::max_val(u.data(), n) == k::scalar::max_val(u.data(), n));
        CHECK(k::min_val(v.data(), n) == k::scalar::min_val(v.data(), n));
        CHECK(k::max_abs(v.data(), n) == k::scalar::max_abs(v.data(), n));
        CHECK(k::sum(v.data(), n) == doctest::Approx(k::scalar::sum(v.data(), n)).epsilon(1e-12));
    }
    k::reset();
}

TEST_CASE("forcing an unsupported backend throws, scalar always works") {
    CHECK_NOTHROW(k::force(k::Backend::Scalar));
    CHECK(k::active() == k::Backend::Scalar);
    k::reset();
}
