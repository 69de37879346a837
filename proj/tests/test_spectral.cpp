#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kslab/spectral.hpp"

#include <cmath>
#include <vector>

using namespace kslab;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Independent oracle: shifted power iteration on the nonsymmetric centered
// discretization of phi_xx + c phi_x + r phi with Dirichlet ends.
double nonsym_principal_power(double c, double rbar, double L, std::size_t n) {
    const double h = 2.0 * L / static_cast<double>(n + 1);
    const double inv_h2 = 1.0 / (h * h);
    const double sub = inv_h2 - 0.5 * c / h;
    const double sup = inv_h2 + 0.5 * c / h;
    const double diag = -2.0 * inv_h2 + rbar;
    const double shift = std::fabs(diag) + std::fabs(sub) + std::fabs(sup) + 1.0;

    std::vector<double> z(n, 1.0), w(n);
    double lambda = 0.0, prev = 1e300;
    for (int it = 0; it < 200000; ++it) {
        for (std::size_t k = 0; k < n; ++k) {
            double acc = (diag + shift) * z[k];
            if (k > 0) acc += sub * z[k - 1];
            if (k + 1 < n) acc += sup * z[k + 1];
            w[k] = acc;
        }
        double nrm = 0.0;
        for (double v : w) nrm = std::max(nrm, std::fabs(v));
        for (std::size_t k = 0; k < n; ++k) z[k] = w[k] / nrm;
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            double az = diag * z[k];
            if (k > 0) az += sub * z[k - 1];
            if (k + 1 < n) az += sup * z[k + 1];
            num += z[k] * az;
            den += z[k] * z[k];
        }
        lambda = num / den;
        if (it > 20 && std::fabs(lambda - prev) < 1e-13) break;
        prev = lambda;
    }
    return lambda;
}

} // namespace

TEST_CASE("closed-form eigenpair for constant r") {
    // lambda = (4 r - c^2 - pi^2/L^2)/4 with phi = e^{-cx/2} cos(pi x / 2L)
    for (double c : {0.0, 1.0, 2.0}) {
        SpectralProblem prob{c, EnvironmentProfile::constant(1.0), kPi, 1024};
        const SpectralResult res = principal_eig(prob);
        const double expected = (4.0 - c * c - 1.0) / 4.0;
        CHECK(res.lambda_L == doctest::Approx(expected).epsilon(1e-4));
        CHECK(res.residual <= 1e-8 * (std::fabs(res.lambda_L) + 1.0 + 1.0));

        double ref_max = 0.0;
        std::vector<double> ref(res.phi.size());
        for (std::size_t i = 0; i < res.phi.size(); ++i) {
            const double x = res.phi.grid.node(i);
            ref[i] = std::exp(-0.5 * c * x) * std::cos(0.5 * x);
            ref_max = std::max(ref_max, ref[i]);
        }
        for (std::size_t i = 0; i < res.phi.size(); ++i)
            CHECK(std::fabs(res.phi[i] - ref[i] / ref_max) <= 2e-4);
    }
}

TEST_CASE("substitution route agrees with an independent nonsymmetric eigensolve") {
    const double L = 3.0, rbar = 1.0;
    const std::size_t n = 64;
    for (double c : {0.5, 1.5}) {
        const double lam_power = nonsym_principal_power(c, rbar, L, n);

        // exactly similar symmetric matrix: same diagonal, off = sqrt(sub*sup)
        const double h = 2.0 * L / static_cast<double>(n + 1);
        const double inv_h2 = 1.0 / (h * h);
        std::vector<double> diag(n, -2.0 * inv_h2 + rbar);
        const double off = std::sqrt((inv_h2 - 0.5 * c / h) * (inv_h2 + 0.5 * c / h));
        const double lam_similar = spectral_detail::largest_eigenvalue(diag, off);
        CHECK(std::fabs(lam_similar - lam_power) <= 1e-8);

        // continuum substitution differs by O(h^2) and shrinks under refinement
        const double lam_subst =
            principal_eigenvalue({c, EnvironmentProfile::constant(rbar), L, n});
        CHECK(std::fabs(lam_subst - lam_power) <= 25.0 * h * h);

        const double lam_subst2 =
            principal_eigenvalue({c, EnvironmentProfile::constant(rbar), L, 2 * n + 1});
        const double lam_power2 = nonsym_principal_power(c, rbar, L, 2 * n + 1);
        const double gap1 = std::fabs(lam_subst - lam_power);
        const double gap2 = std::fabs(lam_subst2 - lam_power2);
        CHECK(gap2 <= 0.5 * gap1 + 1e-9);
    }
}

TEST_CASE("eigenfunction is positive with no sign changes") {
    SpectralProblem prob{0.8, EnvironmentProfile::bump(-1.0, -1.0, 1.0, 2.0, 0.0, 0.0), 15.0,
                         1023};
    const SpectralResult res = principal_eig(prob);
    CHECK(res.phi.values.front() == 0.0);
    CHECK(res.phi.values.back() == 0.0);
    double mx = 0.0;
    for (std::size_t i = 1; i + 1 < res.phi.size(); ++i) {
        CHECK(res.phi[i] >= 0.0);
        mx = std::max(mx, res.phi[i]);
    }
    CHECK(mx == doctest::Approx(1.0)); // max-normalized
    int sign_changes = 0;
    for (std::size_t i = 2; i + 1 < res.phi.size(); ++i)
        if ((res.phi[i] > 1e-14) != (res.phi[i - 1] > 1e-14)) ++sign_changes;
    CHECK(sign_changes <= 1); // rise from the tail only
}

TEST_CASE("eigenvalue shifts exactly under constant shifts of r") {
    const double L = 10.0;
    const std::size_t n = 511;
    const double lam1 = principal_eigenvalue({0.7, EnvironmentProfile::constant(1.0), L, n});
    const double lam2 = principal_eigenvalue({0.7, EnvironmentProfile::constant(1.6), L, n});
    CHECK(std::fabs((lam2 - lam1) - 0.6) <= 1e-10);
}

TEST_CASE("advection acts as the c^2/4 downshift") {
    const double L = 8.0;
    const std::size_t n = 511;
    const double c = 1.2;
    const double lam_c = principal_eigenvalue({c, EnvironmentProfile::constant(1.0), L, n});
    const double lam_0 = principal_eigenvalue({0.0, EnvironmentProfile::constant(1.0), L, n});
    CHECK(std::fabs(lam_c - (lam_0 - 0.25 * c * c)) <= 1e-10);
}

TEST_CASE("pointwise ordering of profiles orders the eigenvalues") {
    const double L = 12.0;
    const std::size_t n = 1023;
    const auto tanh_env = EnvironmentProfile::tanh_edge(-1.0, 1.0, 2.0, 0.0, 0.0);
    const double lam_tanh = principal_eigenvalue({0.3, tanh_env, L, n});
    const double lam_const = principal_eigenvalue({0.3, EnvironmentProfile::constant(1.0), L, n});
    CHECK(lam_tanh <= lam_const);
    CHECK(lam_const < 1.0); // lambda_L(r^*) < r^*
}

TEST_CASE("lambda_infinity approaches r - c^2/4 for constant profiles") {
    const auto res = lambda_infinity(0.0, EnvironmentProfile::constant(1.0), 1e-4);
    CHECK(std::fabs(res.lambda_inf - 1.0) <= 1e-3);
    for (std::size_t k = 1; k < res.history.size(); ++k)
        CHECK(res.history[k].second > res.history[k - 1].second - 1e-12);

    const auto res_c = lambda_infinity(1.0, EnvironmentProfile::constant(1.0), 1e-4);
    CHECK(std::fabs(res_c.lambda_inf - 0.75) <= 1e-3);
}

TEST_CASE("narrow bumps over a hostile floor have negative lambda_infinity") {
    const auto env = EnvironmentProfile::bump(-1.0, -1.0, 1.0, 0.5, 0.0, 0.0);
    const auto res = lambda_infinity(1.5, env, 1e-4);
    CHECK(res.lambda_inf < 0.0);
    CHECK_FALSE(res.indeterminate());
}

TEST_CASE("nu_star formula") {
    CHECK(nu_star(0.0, EnvConstants{0.0, 1.0, 2.0}) == doctest::Approx(2.0));
    CHECK(nu_star(1.0, EnvConstants{0.0, 1.0, 2.0}) == doctest::Approx(4.0));
    CHECK(nu_star(0.0, EnvConstants{0.0, 0.0, 0.0}) == doctest::Approx(0.0));
}

TEST_CASE("gradient bound constant and verdict") {
    const EnvConstants ec{-1.0, 1.0, 2.0};
    SpectralProblem prob{0.0, EnvironmentProfile::bump(-1.0, -1.0, 1.0, 2.0, 0.0, 0.0), 30.0,
                         2047};
    const SpectralResult res = principal_eig(prob);
    const PhiGradientReport rep0 = check_phi_gradient_bound(res, 0.0, ec);
    CHECK(rep0.bound_constant == doctest::Approx(std::sqrt(8.0) / 2.0));
    CHECK(rep0.pass);

    const PhiGradientReport rep1 = check_phi_gradient_bound(res, 1.0, ec);
    CHECK(rep1.bound_constant == doctest::Approx(2.0)); // (sqrt(9)+1)/2
}

TEST_CASE("invalid spectral problems are rejected") {
    CHECK_THROWS(principal_eigenvalue({0.0, EnvironmentProfile::constant(1.0), -1.0, 64}));
    CHECK_THROWS(principal_eigenvalue({0.0, EnvironmentProfile::constant(1.0), 1.0, 4}));
}
