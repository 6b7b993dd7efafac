#include "entroflux/sweep.hpp"

#include "entroflux/errors.hpp"
#include "entroflux/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace entroflux::sweep {

namespace {

void set_generic(model::FeedbackParams& p, const std::string& var, double x) {
    if (var == "omega_a") p.omega_a = x;
    else if (var == "n_a") p.n_a = x;
    else if (var == "n_c") p.n_c = x;
    else if (var == "tau") p.tau = x;
    else if (var == "theta") p.theta = x;
    else if (var == "g") p.g = x;
}

void set_opto(optomech::OptoParams& o, std::optional<double>& g, const std::string& var, double x) {
    if (var == "delta_0") o.delta_0 = x;
    else if (var == "n_a") o.n_a = x;
    else if (var == "n_c") o.n_c = x;
    else if (var == "tau") o.tau = x;
    else if (var == "theta") o.theta = x;
    else if (var == "g") g = x;
}

ResultRow evaluate_point(const Scenario& s, double x, bool verify_oracle) {
    ResultRow row;
    row.value = x;
    try {
        const auto p = point_params(s, x);
        if (!p) return row;
        const model::DerivedParams d = model::derive_params(*p);
        const auto a = model::build_drift(*p, d);
        if (!model::check_stability(a)) return row;
        row.stable = true;
        const auto dm = model::build_diffusion(*p, d);
        const model::CovMatrix v(linalg::solve_lyapunov(a, dm));
        row.report = thermo::evaluate(*p, v);
        if (verify_oracle) {
            const auto v_ode = oracle::integrate_covariance(a, dm, oracle::default_config(a));
            row.oracle_defect = (v.matrix() - v_ode.matrix()).max_abs();
        }
    } catch (const Error& e) {
        row.report.reset();
        row.failure = e.what();
    } catch (const std::invalid_argument& e) {
        row.report.reset();
        row.failure = e.what();
    }
    return row;
}

}  // namespace

std::optional<double> ResultRow::numeric(Output o) const {
    if (!report) return std::nullopt;
    switch (o) {
        case Output::pi_s: return report->pi_s;
        case Output::mu_a: return report->mu_a;
        case Output::mu_c: return report->mu_c;
        case Output::mutual_info: return report->mutual_info;
        case Output::log_neg: return report->log_neg;
        case Output::nu_minus: return report->nu_minus;
        case Output::n_a_s: return report->n_a_s;
        case Output::n_c_s: return report->n_c_s;
        case Output::stable:
        case Output::physical: return std::nullopt;
    }
    return std::nullopt;
}

std::optional<model::FeedbackParams> point_params(const Scenario& s, double x) {
    const std::string& var = s.sweep.variable;
    if (s.kind == Kind::generic) {
        model::FeedbackParams p = s.generic;
        set_generic(p, var, x);
        if (s.kappa_fb) {
            const double factor = 1.0 - 2.0 * p.tau * std::cos(p.theta);
            if (!(factor > 0.0)) return std::nullopt;
            p.kappa_a = *s.kappa_fb / factor;
        }
        p.validate();
        return p;
    }

    optomech::OptoParams o = s.opto;
    std::optional<double> g = s.g_enhanced;
    set_opto(o, g, var, x);
    if (s.kappa_fb) {
        const double factor = 1.0 - 2.0 * o.tau * std::cos(o.theta);
        if (!(factor > 0.0)) return std::nullopt;
        o.kappa_a = *s.kappa_fb / factor;
    }
    o.validate();
    model::FeedbackParams p;
    if (g) {
        p = optomech::map_to_generic_direct(o, *g);
    } else {
        const auto roots = optomech::mean_field_steady_state(o);
        std::optional<optomech::OptoSteadyState> chosen;
        try {
            chosen = optomech::select_branch(roots, s.branch);
            p = optomech::map_to_generic(o, *chosen);
        } catch (const UnstableBranch&) {
            return std::nullopt;
        } catch (const std::out_of_range&) {
            return std::nullopt;
        }
    }
    p.validate();
    return p;
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ENTROFLUX_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<ResultRow> run_sweep(const Scenario& s, const SweepOptions& opts) {
    const std::size_t n = s.sweep.size();
    std::vector<ResultRow> rows(n);
    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(opts.threads), std::max<std::size_t>(n, 1)));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            rows[i] = evaluate_point(s, s.sweep.at(i), opts.verify_oracle);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    return rows;
}

}  // namespace entroflux::sweep
