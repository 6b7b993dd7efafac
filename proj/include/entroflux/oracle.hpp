// oracle.hpp: time-domain check of the Lyapunov steady state.
//
// Integrates dV/dt = A V + V A^T + D with fixed-step RK4 so the algebraic
// solution can be compared against an independent route.

#pragma once

#include "entroflux/linalg.hpp"
#include "entroflux/model.hpp"

#include <optional>

namespace entroflux::oracle {

using linalg::RealMatrix;

struct OdeConfig {
    double dt = 1e-3;
    double t_max = 200.0;
    std::optional<model::CovMatrix> v0;   // vacuum when unset
};

// dt = 0.01 / max|A_ij| and t_max = 50 / (stability margin).
OdeConfig default_config(const RealMatrix& a);

// Throws Diverged once ||V||_inf exceeds 1e12.
model::CovMatrix integrate_covariance(const RealMatrix& a, const RealMatrix& d, const OdeConfig& cfg);

}  // namespace entroflux::oracle
