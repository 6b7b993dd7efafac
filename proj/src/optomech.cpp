#include "entroflux/optomech.hpp"

#include "entroflux/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace entroflux::optomech {

namespace {

constexpr double kRealRootTol = 1e-12;

// Real roots of x^3 + b x^2 + c x + d, trigonometric form when all three are
// real, Cardano otherwise.
std::vector<double> monic_cubic_roots(double b, double c, double d) {
    const double shift = b / 3.0;
    const double p = c - b * b / 3.0;
    const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    const double disc = 4.0 * p * p * p + 27.0 * q * q;
    const double scale = std::max({1.0, std::abs(4.0 * p * p * p), 27.0 * q * q});

    std::vector<double> t;
    if (p < 0.0 && disc < kRealRootTol * scale) {
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) t.push_back(m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0));
    } else {
        const double s = std::sqrt(std::max(0.0, q * q / 4.0 + p * p * p / 27.0));
        t.push_back(std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s));
    }
    for (double& x : t) x -= shift;
    return t;
}

struct PhotonCubic {
    double chi;
    double delta;
    double kappa;
    double drive2;

    double value(double n) const {
        const double det = delta - chi * n;
        return n * (kappa * kappa + det * det) - drive2;
    }
    double slope(double n) const {
        return 3.0 * chi * chi * n * n - 4.0 * delta * chi * n + kappa * kappa + delta * delta;
    }
};

double polish(const PhotonCubic& f, double n) {
    for (int it = 0; it < 8; ++it) {
        const double s = f.slope(n);
        if (s == 0.0) break;
        const double step = f.value(n) / s;
        n -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(n))) break;
    }
    return n;
}

}  // namespace

double OptoParams::xi() const { return std::sqrt(1.0 - tau * tau); }

double OptoParams::drive_amplitude() const {
    if (power) return std::sqrt(2.0 * power->power * kappa_a / power->laser_freq);
    return drive;
}

double OptoParams::effective_drive() const { return drive_through_splitter ? xi() * drive_amplitude() : drive_amplitude(); }

void OptoParams::validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("OptoParams: " + what); };
    const double fields[] = {omega_m, gamma_m, kappa_a, delta_0, g0, drive, tau, theta, n_a, n_c};
    for (double f : fields)
        if (!std::isfinite(f)) fail("non-finite field");
    if (!(omega_m > 0.0)) fail("omega_m must be positive");
    if (!(gamma_m > 0.0)) fail("gamma_m must be positive");
    if (!(kappa_a > 0.0)) fail("kappa_a must be positive");
    if (g0 < 0.0) fail("g0 must be non-negative");
    if (drive < 0.0) fail("drive amplitude must be non-negative");
    if (power && (!(power->power >= 0.0) || !(power->laser_freq > 0.0))) fail("invalid laser power/frequency");
    if (!(tau >= 0.0 && tau < 1.0)) fail("tau must lie in [0, 1)");
    if (n_a < 0.0 || n_c < 0.0) fail("bath occupations must be non-negative");
}

double feedback_detuning(const OptoParams& p) { return p.delta_0 - 2.0 * p.kappa_a * p.tau * std::sin(p.theta); }

double detuning_pull(const OptoParams& p) {
    return 2.0 * p.g0 * p.g0 * p.omega_m / (p.omega_m * p.omega_m + p.gamma_m * p.gamma_m);
}

std::vector<OptoSteadyState> mean_field_steady_state(const OptoParams& p) {
    p.validate();
    const double kappa_fb = p.kappa_a * (1.0 - 2.0 * p.tau * std::cos(p.theta));
    const double e_eff = p.effective_drive();
    const PhotonCubic f{detuning_pull(p), feedback_detuning(p), kappa_fb, e_eff * e_eff};

    std::vector<double> ns;
    if (f.chi == 0.0) {
        const double lorentz = f.kappa * f.kappa + f.delta * f.delta;
        if (lorentz > 0.0)
            ns.push_back(f.drive2 / lorentz);
        else if (f.drive2 == 0.0)
            ns.push_back(0.0);
    } else {
        const double chi2 = f.chi * f.chi;
        ns = monic_cubic_roots(-2.0 * f.delta / f.chi, (f.kappa * f.kappa + f.delta * f.delta) / chi2, -f.drive2 / chi2);
        for (double& n : ns) n = polish(f, n);
    }

    std::sort(ns.begin(), ns.end());
    std::vector<OptoSteadyState> out;
    for (double n : ns) {
        if (n < 0.0) {
            // n (kappa^2 + ...) - E^2 < 0 for n < 0, so only roundoff lands here
            if (n < -kRealRootTol * std::max(1.0, f.drive2)) continue;
            n = 0.0;
        }
        OptoSteadyState s;
        s.n_photon = n;
        s.delta_eff = f.delta - f.chi * n;
        s.a_s = e_eff / std::complex<double>(kappa_fb, s.delta_eff);
        s.c_s = std::complex<double>(0.0, p.g0 * std::norm(s.a_s)) / std::complex<double>(p.gamma_m, p.omega_m);
        s.branch = out.size();
        s.stable = f.slope(n) > 0.0;
        out.push_back(s);
    }
    if (out.empty()) throw NoPhysicalRoot("mean_field_steady_state: no non-negative photon number");
    return out;
}

OptoSteadyState select_branch(const std::vector<OptoSteadyState>& roots, std::optional<std::size_t> branch) {
    if (branch) {
        if (*branch >= roots.size()) {
            throw std::out_of_range("select_branch: branch " + std::to_string(*branch) + " not available");
        }
        return roots[*branch];
    }
    for (const auto& r : roots)
        if (r.stable) return r;
    throw UnstableBranch("select_branch: no stable mean-field branch");
}

double mean_field_residual(const OptoParams& p, const OptoSteadyState& s) {
    const double kappa_fb = p.kappa_a * (1.0 - 2.0 * p.tau * std::cos(p.theta));
    const double delta_eff = feedback_detuning(p) - p.g0 * 2.0 * s.c_s.real();
    const auto ra = std::complex<double>(kappa_fb, delta_eff) * s.a_s - p.effective_drive();
    const auto rc = std::complex<double>(p.gamma_m, p.omega_m) * s.c_s -
                    std::complex<double>(0.0, p.g0 * std::norm(s.a_s));
    return std::max(std::abs(ra), std::abs(rc));
}

model::FeedbackParams map_to_generic(const OptoParams& p, const OptoSteadyState& s) {
    if (!s.stable) throw UnstableBranch("map_to_generic: mean-field branch is unstable");
    model::FeedbackParams out = map_to_generic_direct(p, p.g0 * std::abs(s.a_s));
    // derive_params subtracts the feedback shift again, landing on delta_eff
    out.omega_a = s.delta_eff + 2.0 * p.kappa_a * p.tau * std::sin(p.theta);
    return out;
}

model::FeedbackParams map_to_generic_direct(const OptoParams& p, double g_enhanced) {
    model::FeedbackParams out;
    out.omega_a = p.delta_0;
    out.omega_c = p.omega_m;
    out.kappa_a = p.kappa_a;
    out.kappa_c = p.gamma_m;
    out.g = g_enhanced;
    out.tau = p.tau;
    out.theta = p.theta;
    out.n_a = p.n_a;
    out.n_c = p.n_c;
    return out;
}

}  // namespace entroflux::optomech
