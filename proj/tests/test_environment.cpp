#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kslab/environment.hpp"

#include <cmath>
#include <random>

using namespace kslab;

TEST_CASE("constant profile evaluates to its value everywhere") {
    const auto p = EnvironmentProfile::constant(1.0, 0.7);
    CHECK(p.evaluate(0.0, 0.0) == 1.0);
    CHECK(p.evaluate(123.4, -9.0) == 1.0);
}

TEST_CASE("tanh profile attains its limits in the tails") {
    const auto p = EnvironmentProfile::tanh_edge(-1.0, 1.0, 1.0, 0.0, 0.0);
    CHECK(std::fabs(p.at(60.0) - 1.0) < 1e-12);
    CHECK(std::fabs(p.at(-60.0) + 1.0) < 1e-12);
    // |r(x) - r_plus| < 1e-12 beyond center + 40 width
    CHECK(std::fabs(p.at(40.0) - 1.0) < 1e-12);
}

TEST_CASE("bump profile peaks at its center") {
    const auto sym = EnvironmentProfile::bump(-1.0, -1.0, 1.0, 2.0, 3.0, 0.0);
    CHECK(sym.at(3.0) == doctest::Approx(1.0).epsilon(1e-15));
    const auto tilted = EnvironmentProfile::bump(-1.0, -0.5, 1.0, 2.0, 0.0, 0.0);
    CHECK(tilted.at(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::fabs(tilted.at(90.0) + 0.5) < 1e-12);
    CHECK(std::fabs(tilted.at(-90.0) + 1.0) < 1e-12);
}

TEST_CASE("constants derive r_*, r^*, c^*") {
    const auto tanh_env = EnvironmentProfile::tanh_edge(-1.0, 1.0, 1.0, 0.0, 0.0);
    auto ec = constants(tanh_env);
    CHECK(ec.r_star_low == doctest::Approx(-1.0));
    CHECK(ec.r_star == doctest::Approx(1.0));
    CHECK(ec.c_star == doctest::Approx(2.0));

    const auto bump_env = EnvironmentProfile::bump(-1.0, -0.5, 1.0, 1.0, 0.0, 0.0);
    ec = constants(bump_env);
    CHECK(ec.r_star_low == doctest::Approx(-1.0));
    CHECK(ec.r_star == doctest::Approx(1.0));
    CHECK(ec.c_star == doctest::Approx(2.0));

    ec = constants(EnvironmentProfile::constant(0.25));
    CHECK(ec.c_star == doctest::Approx(1.0));
}

TEST_CASE("profiles with r^* <= 0 are rejected") {
    CHECK_THROWS(constants(EnvironmentProfile::constant(-0.5)));
    CHECK_THROWS(constants(EnvironmentProfile::constant(0.0)));
    CHECK_THROWS(EnvironmentProfile::tanh_edge(1.0, -1.0, 1.0, 0.0, 0.0));
    CHECK_THROWS(EnvironmentProfile::bump(-1.0, 0.5, 1.0, 1.0, 0.0, 0.0));
    CHECK_THROWS(EnvironmentProfile::bump(-1.0, -1.0, -0.2, 1.0, 0.0, 0.0));
}

TEST_CASE("sample matches nodewise evaluate and stays inside [r_*, r^*]") {
    const Grid g(-50.0, 50.0, 1001);
    std::mt19937_64 rng(11u);
    std::uniform_real_distribution<double> neg(-2.0, -0.1), pos(0.1, 2.0), w(0.5, 4.0),
        cen(-5.0, 5.0), sp(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        EnvironmentProfile p;
        if (trial % 3 == 0)
            p = EnvironmentProfile::constant(pos(rng), sp(rng));
        else if (trial % 3 == 1)
            p = EnvironmentProfile::tanh_edge(neg(rng), pos(rng), w(rng), cen(rng), sp(rng));
        else
            p = EnvironmentProfile::bump(neg(rng), neg(rng), pos(rng), w(rng), cen(rng), sp(rng));
        const auto ec = constants(p);
        const double t = sp(rng);
        const Field f = sample(p, g, t);
        for (std::size_t i = 0; i < f.size(); ++i) {
            CHECK(f[i] >= ec.r_star_low - 1e-12);
            CHECK(f[i] <= ec.r_star + 1e-12);
            CHECK(f[i] == p.evaluate(g.node(i), t));
        }
    }
}

TEST_CASE("shift equivariance is exact on dyadic inputs") {
    const auto p = EnvironmentProfile::tanh_edge(-1.0, 1.0, 2.0, 0.5, 0.5);
    for (double x : {-3.25, 0.0, 1.5, 7.75}) {
        for (double t : {0.0, 0.25, 2.0, 5.5}) {
            for (double delta : {0.125, 1.0, 2.25}) {
                CHECK(p.evaluate(x, t) == p.evaluate(x - p.shift_speed * delta, t - delta));
            }
        }
    }
}

TEST_CASE("tanh profile is monotone nondecreasing") {
    const auto p = EnvironmentProfile::tanh_edge(-0.7, 1.3, 1.7, -2.0, 0.0);
    const Grid g(-30.0, 30.0, 2001);
    const Field f = sample(p, g, 0.0);
    for (std::size_t i = 1; i < f.size(); ++i) CHECK(f[i] >= f[i - 1]);
}

TEST_CASE("bump profile is symmetric about its center when tails are equal") {
    const auto p = EnvironmentProfile::bump(-1.0, -1.0, 1.0, 1.5, 2.0, 0.0);
    for (double d : {0.3, 1.1, 4.0, 9.5})
        CHECK(std::fabs(p.at(2.0 + d) - p.at(2.0 - d)) < 1e-12);
}

TEST_CASE("sampling a shifting tanh at t and t+dt differs by the spatial shift") {
    const double c = 0.5, dt = 2.0; // c*dt = 1.0 = 10 grid spacings
    const auto p = EnvironmentProfile::tanh_edge(-1.0, 1.0, 1.0, 0.0, c);
    const Grid g(-20.0, 20.0, 401);
    const Field f0 = sample(p, g, 0.0);
    const Field f1 = sample(p, g, dt);
    for (std::size_t i = 10; i < g.n_nodes; ++i)
        CHECK(f1[i] == doctest::Approx(f0[i - 10]).epsilon(1e-12));
}
