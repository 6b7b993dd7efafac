#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entroflux/errors.hpp"
#include "entroflux/oracle.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace entroflux;
using namespace entroflux::oracle;
using linalg::RealMatrix;

namespace {

model::FeedbackParams resonant_point() {
    model::FeedbackParams p;
    p.kappa_a = 0.2;
    p.kappa_c = 0.2;
    p.g = 0.05;
    p.tau = 0.9;
    p.theta = std::numbers::pi;
    p.n_c = 2.0;
    return p;
}

}  // namespace

TEST_CASE("default_config") {
    const auto p = resonant_point();
    const auto a = model::build_drift(p, model::derive_params(p));
    const auto cfg = default_config(a);
    CHECK(cfg.dt == doctest::Approx(0.01 / a.max_abs()));
    CHECK(cfg.t_max == doctest::Approx(50.0 / linalg::stability_margin(a)));
    CHECK_THROWS_AS(default_config(RealMatrix::identity(4)), Unstable);
}

TEST_CASE("decoupled thermalization has a closed form") {
    // dV/dt = -2 k (V - n - 1/2) for a pure damping drift
    const double k = 0.3, n = 1.5, t = 2.0;
    const auto a = -k * RealMatrix::identity(4);
    const auto d = RealMatrix::diagonal({k * (2 * n + 1), k * (2 * n + 1), k * (2 * n + 1), k * (2 * n + 1)});
    OdeConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_max = t;
    const auto v = integrate_covariance(a, d, cfg);
    const double expected = n + 0.5 - n * std::exp(-2 * k * t);
    for (std::size_t i = 0; i < 4; ++i) CHECK(v(i, i) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(v(0, 1)) < 1e-15);
}

TEST_CASE("long-time limit agrees with the Lyapunov solution") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    while (checked < 10) {
        model::FeedbackParams p;
        p.omega_a = 0.5 + u(rng);
        p.kappa_a = 0.2 + 0.3 * u(rng);
        p.kappa_c = 0.2 + 0.3 * u(rng);
        p.g = 0.1 * u(rng);
        p.tau = 0.5 * u(rng);
        p.theta = std::numbers::pi * (0.5 + u(rng));
        p.n_a = 2 * u(rng);
        p.n_c = 2 * u(rng);
        const auto dp = model::derive_params(p);
        const auto a = model::build_drift(p, dp);
        if (!model::check_stability(a) || linalg::stability_margin(a) < 0.05) continue;
        const auto v_ode = integrate_covariance(a, model::build_diffusion(p, dp), default_config(a));
        const auto v = model::steady_state(p);
        CHECK((v_ode.matrix() - v.matrix()).norm_inf() <= 1e-6);
        ++checked;
    }
}

TEST_CASE("starting state is respected") {
    const auto p = resonant_point();
    const auto dp = model::derive_params(p);
    const auto a = model::build_drift(p, dp);
    OdeConfig cfg;
    cfg.t_max = 0.0;
    cfg.v0 = model::CovMatrix(RealMatrix::identity(4));
    CHECK(integrate_covariance(a, model::build_diffusion(p, dp), cfg).matrix() == RealMatrix::identity(4));
    cfg.v0.reset();
    CHECK(integrate_covariance(a, model::build_diffusion(p, dp), cfg).matrix() == model::CovMatrix::vacuum().matrix());
}

TEST_CASE("RK4 is fourth order") {
    const auto p = resonant_point();
    const auto dp = model::derive_params(p);
    const auto a = model::build_drift(p, dp);
    const auto d = model::build_diffusion(p, dp);
    OdeConfig cfg;
    cfg.t_max = 5.0;
    std::vector<RealMatrix> v;
    for (double h : {0.2, 0.1, 0.05}) {
        cfg.dt = h;
        v.push_back(integrate_covariance(a, d, cfg).matrix());
    }
    const double e1 = (v[0] - v[1]).norm_inf();
    const double e2 = (v[1] - v[2]).norm_inf();
    REQUIRE(e2 > 0.0);
    const double ratio = e1 / e2;
    CHECK(ratio >= 8.0);
    CHECK(ratio <= 32.0);
}

TEST_CASE("unstable drift diverges") {
    const auto a = 0.5 * RealMatrix::identity(4);
    OdeConfig cfg;
    cfg.dt = 0.01;
    cfg.t_max = 100.0;
    CHECK_THROWS_AS(integrate_covariance(a, RealMatrix::identity(4), cfg), Diverged);
}
