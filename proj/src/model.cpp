#include "entroflux/model.hpp"

#include "entroflux/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace entroflux::model {

double FeedbackParams::xi() const { return std::sqrt(1.0 - tau * tau); }

void FeedbackParams::validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("FeedbackParams: " + what); };
    const double fields[] = {omega_a, omega_c, kappa_a, kappa_c, g, tau, theta, n_a, n_c};
    for (double f : fields)
        if (!std::isfinite(f)) fail("non-finite field");
    if (!(kappa_a > 0.0)) fail("kappa_a must be positive");
    if (!(kappa_c > 0.0)) fail("kappa_c must be positive");
    if (!(tau >= 0.0 && tau < 1.0)) fail("tau must lie in [0, 1)");
    if (n_a < 0.0 || n_c < 0.0) fail("bath occupations must be non-negative");
}

CovMatrix::CovMatrix(RealMatrix v) : v_(std::move(v)) {
    if (v_.rows() != 4 || v_.cols() != 4) throw std::invalid_argument("CovMatrix: must be 4x4");
    if (!linalg::is_symmetric(v_, 0.0)) throw std::invalid_argument("CovMatrix: must be symmetric");
}

CovMatrix CovMatrix::vacuum() { return CovMatrix(0.5 * RealMatrix::identity(4)); }

double thermal_occupation(double omega, double temperature) {
    if (temperature <= 0.0) return 0.0;
    return 1.0 / std::expm1(omega / temperature);
}

DerivedParams derive_params(const FeedbackParams& p) {
    const double c = std::cos(p.theta);
    const double s = std::sin(p.theta);
    DerivedParams d;
    d.kappa_fb = p.kappa_a * (1.0 - 2.0 * p.tau * c);
    d.omega_fb = p.omega_a - 2.0 * p.kappa_a * p.tau * s;
    d.k_a_diff = p.kappa_a * (1.0 - p.tau * p.tau) * (1.0 - 2.0 * p.tau * c + p.tau * p.tau);
    d.g_big = 2.0 * p.g;
    return d;
}

RealMatrix build_drift(const FeedbackParams& p, const DerivedParams& d) {
    return RealMatrix{
        {-d.kappa_fb, d.omega_fb, 0.0, 0.0},
        {-d.omega_fb, -d.kappa_fb, d.g_big, 0.0},
        {0.0, 0.0, -p.kappa_c, p.omega_c},
        {d.g_big, 0.0, -p.omega_c, -p.kappa_c},
    };
}

RealMatrix build_diffusion(const FeedbackParams& p, const DerivedParams& d) {
    const double da = d.k_a_diff * (2.0 * p.n_a + 1.0);
    const double dc = p.kappa_c * (2.0 * p.n_c + 1.0);
    return RealMatrix::diagonal({da, da, dc, dc});
}

bool check_stability(const RealMatrix& drift) {
    if (!(-drift(0, 0) > 0.0) || !(-drift(2, 2) > 0.0)) return false;
    return linalg::routh_hurwitz_stable(linalg::characteristic_quartic(drift));
}

CovMatrix steady_state(const FeedbackParams& p) {
    p.validate();
    const DerivedParams d = derive_params(p);
    const RealMatrix a = build_drift(p, d);
    if (!check_stability(a)) {
        throw Unstable("steady_state: drift matrix is not strictly stable");
    }
    return CovMatrix(linalg::solve_lyapunov(a, build_diffusion(p, d)));
}

}  // namespace entroflux::model
