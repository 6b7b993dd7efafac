#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entroflux/errors.hpp"
#include "entroflux/model.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace entroflux;
using namespace entroflux::model;
using linalg::RealMatrix;

namespace {

constexpr double pi = std::numbers::pi;

FeedbackParams fig1_point() {
    FeedbackParams p;
    p.omega_a = 1.0;
    p.kappa_a = 0.2;
    p.kappa_c = 0.2;
    p.g = 0.05;
    p.tau = 0.9;
    p.theta = pi;
    return p;
}

}  // namespace

TEST_CASE("thermal_occupation") {
    CHECK(thermal_occupation(1.0, 0.0) == 0.0);
    CHECK(thermal_occupation(1.0, 1e-6) < 1e-300);
    CHECK(thermal_occupation(std::log(2.0), 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    // 1/x - 1/2 + x/12 - x^3/720 at x = 0.01
    const double x = 0.01;
    const double series = 1.0 / x - 0.5 + x / 12.0 - x * x * x / 720.0;
    CHECK(thermal_occupation(1.0, 100.0) == doctest::Approx(series).epsilon(1e-12));
    CHECK(series == doctest::Approx(99.500833).epsilon(1e-8));
}

TEST_CASE("derive_params") {
    SUBCASE("feedback off") {
        FeedbackParams p;
        p.omega_a = 1.7;
        p.kappa_a = 0.3;
        p.theta = 1.2;
        const auto d = derive_params(p);
        CHECK(d.kappa_fb == 0.3);
        CHECK(d.omega_fb == 1.7);
        CHECK(d.k_a_diff == doctest::Approx(0.3));
    }
    SUBCASE("tau = 0.9, theta = pi") {
        const auto d = derive_params(fig1_point());
        CHECK(d.kappa_fb == doctest::Approx(0.56).epsilon(1e-14));
        CHECK(d.omega_fb == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(d.k_a_diff == doctest::Approx(0.2 * 0.19 * 3.61).epsilon(1e-14));
        CHECK(d.k_a_diff == doctest::Approx(0.13718).epsilon(1e-12));
        CHECK(d.g_big == 0.1);
    }
    SUBCASE("tau = 0.5, theta = pi/2") {
        FeedbackParams p;
        p.omega_a = 2.0;
        p.kappa_a = 1.0;
        p.tau = 0.5;
        p.theta = pi / 2;
        const auto d = derive_params(p);
        CHECK(d.kappa_fb == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(d.omega_fb == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(d.k_a_diff == doctest::Approx(0.9375).epsilon(1e-14));
    }
}

TEST_CASE("build_drift") {
    SUBCASE("decoupled") {
        FeedbackParams p;
        p.omega_a = 1.3;
        const auto a = build_drift(p, derive_params(p));
        CHECK(a(0, 2) == 0.0);
        CHECK(a(1, 2) == 0.0);
        CHECK(a(3, 0) == 0.0);
        CHECK(a(0, 1) == 1.3);
        CHECK(a(2, 3) == 1.0);
    }
    SUBCASE("coupling entries") {
        FeedbackParams p;
        p.kappa_a = p.kappa_c = 0.2;
        p.g = 0.05;
        const auto a = build_drift(p, derive_params(p));
        const RealMatrix expected{{-0.2, 1, 0, 0}, {-1, -0.2, 0.1, 0}, {0, 0, -0.2, 1}, {0.1, 0, -1, -0.2}};
        CHECK(a == expected);
    }
    SUBCASE("fig1 resonance") {
        const auto a = build_drift(fig1_point(), derive_params(fig1_point()));
        CHECK(a(0, 0) == doctest::Approx(-0.56));
        CHECK(a(1, 1) == doctest::Approx(-0.56));
        CHECK(a(0, 1) == doctest::Approx(1.0));
        CHECK(a(1, 0) == doctest::Approx(-1.0));
    }
}

TEST_CASE("build_diffusion") {
    FeedbackParams p;
    p.kappa_a = 0.3;
    p.kappa_c = 0.2;
    auto d = build_diffusion(p, derive_params(p));
    CHECK(d == RealMatrix::diagonal({0.3, 0.3, 0.2, 0.2}));

    auto f = fig1_point();
    d = build_diffusion(f, derive_params(f));
    CHECK(d(0, 0) == doctest::Approx(0.13718));
    CHECK(d(1, 1) == doctest::Approx(0.13718));

    p.n_c = 100;
    d = build_diffusion(p, derive_params(p));
    CHECK(d(2, 2) == doctest::Approx(40.2));
    CHECK(d(3, 3) == doctest::Approx(40.2));
}

TEST_CASE("check_stability") {
    FeedbackParams p;
    CHECK(check_stability(build_drift(p, derive_params(p))));

    p.tau = 0.6;
    p.theta = 0.0;
    p.g = 0.05;
    CHECK(derive_params(p).kappa_fb < 0.0);
    CHECK_FALSE(check_stability(build_drift(p, derive_params(p))));
    CHECK_THROWS_AS(steady_state(p), Unstable);

    // red curve of the N_a / N_c figure with strong coupling
    FeedbackParams red;
    red.g = 0.1;
    red.kappa_a = 0.2;
    red.kappa_c = 0.5;
    red.tau = 0.1;
    red.theta = pi;
    const auto a = build_drift(red, derive_params(red));
    CHECK(check_stability(a));
    const auto roots = testing::quartic_roots(linalg::characteristic_quartic(a).c);
    CHECK(testing::max_real_part(roots) < 0.0);

    // deep ultrastrong coupling destabilizes the X-X interaction
    FeedbackParams strong = p;
    strong.tau = 0.0;
    strong.g = 0.6;
    const auto as = build_drift(strong, derive_params(strong));
    const bool brute = testing::max_real_part(testing::quartic_roots(linalg::characteristic_quartic(as).c)) < 0.0;
    CHECK(check_stability(as) == brute);
}

TEST_CASE("steady_state: local equilibria") {
    FeedbackParams p;
    p.n_a = 2.0;
    p.n_c = 5.0;
    p.omega_a = 1.4;
    const auto v = steady_state(p);
    const RealMatrix expected = RealMatrix::diagonal({2.5, 2.5, 5.5, 5.5});
    CHECK((v.matrix() - expected).max_abs() < 1e-12);

    auto f = fig1_point();
    f.g = 0.0;
    const auto vf = steady_state(f);
    const double ka = derive_params(f).k_a_diff, kfb = derive_params(f).kappa_fb;
    CHECK(vf(0, 0) == doctest::Approx(ka / (2 * kfb)).epsilon(1e-12));
    CHECK(vf(0, 0) == doctest::Approx(0.1224821428571).epsilon(1e-10));
    CHECK(vf(1, 1) == doctest::Approx(vf(0, 0)));
    CHECK(std::abs(vf(0, 1)) < 1e-14);
}

TEST_CASE("steady_state: coupled state has correlations") {
    const auto v = steady_state(fig1_point());
    CHECK(v.block_ac().max_abs() > 1e-3);
    CHECK(linalg::is_symmetric(v.matrix(), 0.0));
    CHECK(linalg::is_symmetric_psd(v.matrix(), 1e-12));
}

TEST_CASE("property: without feedback the phase is irrelevant") {
    FeedbackParams p;
    p.g = 0.07;
    p.omega_a = 0.9;
    p.kappa_c = 0.35;
    p.n_a = 1.5;
    p.n_c = 3.0;
    p.theta = 0.0;
    const auto ref = steady_state(p).matrix();
    for (int k = 1; k < 64; ++k) {
        p.theta = 2 * pi * k / 64.0;
        CHECK((steady_state(p).matrix() - ref).max_abs() <= 1e-14);
    }
}

TEST_CASE("property: decoupled modes sit at their local equilibria") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        FeedbackParams p;
        p.omega_a = 3 * u(rng);
        p.kappa_a = 0.05 + u(rng);
        p.kappa_c = 0.05 + u(rng);
        p.tau = 0.95 * u(rng);
        p.theta = pi + (u(rng) - 0.5);  // keeps kappa_fb > 0
        p.n_a = 10 * u(rng);
        p.n_c = 10 * u(rng);
        const auto d = derive_params(p);
        if (d.kappa_fb <= 0) continue;
        const auto v = steady_state(p);
        CHECK(v.block_ac().max_abs() <= 1e-10);
        const double a_eq = d.k_a_diff * (2 * p.n_a + 1) / (2 * d.kappa_fb);
        CHECK(std::abs(v(0, 0) - a_eq) <= 1e-10 * std::max(1.0, a_eq));
        CHECK(std::abs(v(1, 1) - a_eq) <= 1e-10 * std::max(1.0, a_eq));
        CHECK(std::abs(v(2, 2) - (p.n_c + 0.5)) <= 1e-10 * (p.n_c + 1));
        CHECK(std::abs(v(3, 3) - (p.n_c + 0.5)) <= 1e-10 * (p.n_c + 1));
    }
}

TEST_CASE("property: a <-> c label swap permutes the covariance") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    while (checked < 100) {
        FeedbackParams p;
        p.omega_a = 0.2 + 2 * u(rng);
        p.omega_c = 0.2 + 2 * u(rng);
        p.kappa_a = 0.05 + u(rng);
        p.kappa_c = 0.05 + u(rng);
        p.g = 0.1 * u(rng);
        p.n_a = 5 * u(rng);
        p.n_c = 5 * u(rng);
        FeedbackParams q = p;
        std::swap(q.omega_a, q.omega_c);
        std::swap(q.kappa_a, q.kappa_c);
        std::swap(q.n_a, q.n_c);
        if (!check_stability(build_drift(p, derive_params(p)))) continue;
        const auto v = steady_state(p).matrix();
        const auto w = steady_state(q).matrix();
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) {
                const std::size_t pi_ = (i + 2) % 4, pj = (j + 2) % 4;
                CHECK(std::abs(w(pi_, pj) - v(i, j)) <= 1e-12 * std::max(1.0, std::abs(v(i, j))));
            }
        ++checked;
    }
}

TEST_CASE("FeedbackParams validation") {
    FeedbackParams p;
    p.tau = 1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.tau = 0.5;
    p.kappa_a = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.kappa_a = 0.2;
    p.n_c = -1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.n_c = 0;
    CHECK(p.xi() == doctest::Approx(std::sqrt(0.75)));
    CHECK_NOTHROW(p.validate());
}
