#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kslab/chemo.hpp"
#include "kslab/kernels.hpp"

#include <cmath>
#include <random>

using namespace kslab;

namespace {

Field mollifier_bump(const Grid& g, double amp, double center, double halfwidth) {
    Field u(g);
    for (std::size_t i = 0; i < g.n_nodes; ++i) {
        const double s = (g.node(i) - center) / halfwidth;
        u[i] = std::fabs(s) < 1.0 ? amp * std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
    }
    return u;
}

} // namespace

TEST_CASE("double-integral kernel matches the closed form") {
    for (double nu : {0.25, 1.0, 4.0})
        for (double z : {0.0, 0.5, 1.0, 2.0})
            CHECK(green_kernel_quadrature(z, nu) ==
                  doctest::Approx(green_kernel_closed_form(z, nu)).epsilon(1e-9));
}

TEST_CASE("kernel solve of u == 1 gives mu/nu away from the boundaries") {
    const Grid g(-20.0, 20.0, 16001); // h = 0.0025 keeps the trapezoid kink bias < 1e-6
    ChemoParams p;
    p.mu = 1.0;
    p.nu = 1.0;
    const Field u(g, 1.0);
    const Field v = solve_v_kernel(u, p);
    for (std::size_t i = 0; i < g.n_nodes; ++i) {
        if (std::fabs(g.node(i)) > 4.0) continue;
        CHECK(v[i] == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("zero density produces zero attractant") {
    const Grid g(-5.0, 5.0, 101);
    const Field u(g, 0.0);
    ChemoParams p;
    const Field vk = solve_v_kernel(u, p);
    const Field vt = solve_v_tridiag(u, p);
    for (std::size_t i = 0; i < g.n_nodes; ++i) {
        CHECK(vk[i] == 0.0);
        CHECK(vt[i] == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("tridiagonal solve of u == 1 gives mu/nu in the interior") {
    const Grid g(-30.0, 30.0, 1201);
    ChemoParams p;
    p.mu = 2.0;
    p.nu = 1.0;
    const Field u(g, 1.0);
    const Field v = solve_v_tridiag(u, p);
    for (std::size_t i = 0; i < g.n_nodes; ++i) {
        if (std::fabs(g.node(i)) > 10.0) continue;
        CHECK(v[i] == doctest::Approx(2.0).epsilon(1e-6));
    }
}

TEST_CASE("kernel and tridiagonal solvers agree on compact data") {
    const Grid g(-16.0, 16.0, 2001);
    ChemoParams p;
    p.mu = 1.0;
    p.nu = 4.0;
    const Field u = mollifier_bump(g, 1.3, 0.5, 3.0);
    const Field vk = solve_v_kernel(u, p);
    const Field vt = solve_v_tridiag(u, p);
    const double h = g.h();
    const double tol =
        std::max(1e-5, 10.0 * h * h * p.mu * kernels::max_abs(u.values.data(), u.size()));
    for (std::size_t i = 0; i < g.n_nodes; ++i)
        CHECK(std::fabs(vk[i] - vt[i]) <= tol);
}

TEST_CASE("doubling nu strictly decreases the interior attractant peak") {
    const Grid g(-16.0, 16.0, 1601);
    const Field u = mollifier_bump(g, 1.0, 0.0, 2.0);
    for (double nu : {0.5, 1.0, 2.0}) {
        ChemoParams lo, hi;
        lo.nu = nu;
        hi.nu = 2.0 * nu;
        const Field vk_lo = solve_v_kernel(u, lo);
        const Field vk_hi = solve_v_kernel(u, hi);
        const Field vt_lo = solve_v_tridiag(u, lo);
        const Field vt_hi = solve_v_tridiag(u, hi);
        CHECK(kernels::max_val(vk_hi.values.data(), vk_hi.size()) <
              kernels::max_val(vk_lo.values.data(), vk_lo.size()));
        CHECK(kernels::max_val(vt_hi.values.data(), vt_hi.size()) <
              kernels::max_val(vt_lo.values.data(), vt_lo.size()));
    }
}

TEST_CASE("gradient of a constant field is zero, of a linear field its slope") {
    const Grid g(0.0, 10.0, 101);
    Field c(g, 3.3);
    const Field gc = gradient_v(c);
    for (std::size_t i = 0; i < g.n_nodes; ++i) CHECK(gc[i] == doctest::Approx(0.0));

    Field lin(g);
    for (std::size_t i = 0; i < g.n_nodes; ++i) lin[i] = -2.0 + 0.7 * g.node(i);
    const Field gl = gradient_v(lin);
    for (std::size_t i = 0; i < g.n_nodes; ++i)
        CHECK(gl[i] == doctest::Approx(0.7).epsilon(1e-10));
}

TEST_CASE("attractant gradient respects |v_x| <= sqrt(nu) v") {
    const Grid g(-25.0, 25.0, 2001);
    ChemoParams p;
    p.nu = 2.0;
    SUBCASE("uniform u") {
        const PsiBoundReport rep = check_psi_bound(Field(g, 1.0), p);
        CHECK(rep.pass);
        CHECK(rep.max_violation <= 1e-6); // v_x ~ 0 in the bulk
    }
    SUBCASE("compact bump") {
        const PsiBoundReport rep = check_psi_bound(mollifier_bump(g, 2.0, -3.0, 2.0), p);
        CHECK(rep.pass);
    }
    SUBCASE("point-like source") {
        Field u(g);
        const std::size_t mid = g.n_nodes / 2;
        u[mid] = 1.0;
        u[mid - 1] = 0.5;
        u[mid + 1] = 0.5;
        const Field v = solve_v_tridiag(u, p);
        const Field vx = gradient_v(v);
        const double root_nu = std::sqrt(p.nu);
        for (std::size_t i = 0; i < g.n_nodes; ++i) {
            if (i == mid) continue; // kink of e^{-sqrt(nu)|x|} sits here
            CHECK(std::fabs(vx[i]) <= root_nu * v[i] + 10.0 * g.h() * v[mid]);
        }
    }
}

TEST_CASE("both solvers preserve positivity and linearity") {
    const Grid g(-15.0, 15.0, 601);
    std::mt19937_64 rng(5u);
    std::uniform_real_distribution<double> amp(0.0, 2.0), cen(-6.0, 6.0), wid(0.5, 3.0),
        coef(0.0, 2.0);
    ChemoParams p;
    p.nu = 1.5;
    p.mu = 0.8;
    for (int trial = 0; trial < 20; ++trial) {
        const Field u1 = mollifier_bump(g, amp(rng), cen(rng), wid(rng));
        const Field u2 = mollifier_bump(g, amp(rng), cen(rng), wid(rng));
        const double alpha = coef(rng), beta = coef(rng);
        Field mix(g);
        for (std::size_t i = 0; i < g.n_nodes; ++i) mix[i] = alpha * u1[i] + beta * u2[i];

        for (auto solver : {solve_v_kernel, solve_v_tridiag}) {
            const Field v1 = solver(u1, p);
            const Field v2 = solver(u2, p);
            const Field vm = solver(mix, p);
            for (std::size_t i = 0; i < g.n_nodes; ++i) {
                CHECK(v1[i] >= 0.0);
                CHECK(std::fabs(vm[i] - alpha * v1[i] - beta * v2[i]) <= 1e-10);
            }
        }
    }
}

TEST_CASE("negative densities below the tolerance are rejected") {
    const Grid g(-5.0, 5.0, 101);
    Field u(g, 0.0);
    u[50] = -1e-9;
    ChemoParams p;
    CHECK_THROWS(solve_v_kernel(u, p));
    CHECK_THROWS(solve_v_tridiag(u, p));
    u[50] = -1e-11; // inside tolerance
    CHECK_NOTHROW(solve_v_tridiag(u, p));
}

TEST_CASE("tridiagonal solver recovers the kernel image of a narrow bump") {
    const Grid g(-12.0, 12.0, 2401);
    ChemoParams p;
    p.nu = 1.0;
    const Field u = mollifier_bump(g, 1.0, 0.0, 0.5);
    const Field vk = solve_v_kernel(u, p);
    const Field vt = solve_v_tridiag(u, p);
    const double h = g.h();
    for (std::size_t i = 0; i < g.n_nodes; ++i)
        CHECK(std::fabs(vt[i] - vk[i]) <= 20.0 * h * h);
}
