// model.hpp: two coupled damped oscillators with a coherent-feedback loop on mode a.
//
// Units: hbar = k_B = 1, every rate and frequency measured in units of the
// mode-c frequency. Quadratures are ordered (X_a, Y_a, X_c, Y_c).

#pragma once

#include "entroflux/linalg.hpp"

namespace entroflux::model {

using linalg::RealMatrix;

struct FeedbackParams {
    double omega_a = 1.0;
    double omega_c = 1.0;
    double kappa_a = 0.2;
    double kappa_c = 0.2;
    double g = 0.0;          // bare coupling; the quadrature coupling is G = 2g
    double tau = 0.0;        // beam-splitter reflectivity in [0, 1)
    double theta = 0.0;      // feedback phase
    double n_a = 0.0;
    double n_c = 0.0;

    // Transmission xi = sqrt(1 - tau^2).
    double xi() const;
    // Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

struct DerivedParams {
    double kappa_fb = 0.0;   // kappa_a (1 - 2 tau cos theta)
    double omega_fb = 0.0;   // omega_a - 2 kappa_a tau sin theta
    double k_a_diff = 0.0;   // kappa_a (1 - tau^2) |1 - tau e^{i theta}|^2
    double g_big = 0.0;      // 2 g
};

// 4x4 symmetric steady-state covariance matrix.
class CovMatrix {
public:
    explicit CovMatrix(RealMatrix v);

    const RealMatrix& matrix() const noexcept { return v_; }
    double operator()(std::size_t i, std::size_t j) const { return v_(i, j); }

    RealMatrix block_a() const { return v_.block(0, 0, 2, 2); }
    RealMatrix block_c() const { return v_.block(2, 2, 2, 2); }
    RealMatrix block_ac() const { return v_.block(0, 2, 2, 2); }

    static CovMatrix vacuum();

private:
    RealMatrix v_;
};

// Bose-Einstein occupation 1/(e^{omega/T} - 1); T <= 0 gives 0.
double thermal_occupation(double omega, double temperature);

DerivedParams derive_params(const FeedbackParams& p);

RealMatrix build_drift(const FeedbackParams& p, const DerivedParams& d);
RealMatrix build_diffusion(const FeedbackParams& p, const DerivedParams& d);

// Routh-Hurwitz on the drift quartic, short-circuited when either diagonal
// damping (-A(0,0) = kappa_fb, -A(2,2) = kappa_c) is not positive.
bool check_stability(const RealMatrix& drift);

// Throws Unstable when the drift matrix is not strictly Hurwitz.
CovMatrix steady_state(const FeedbackParams& p);

}  // namespace entroflux::model
