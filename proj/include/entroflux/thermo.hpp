// thermo.hpp: stationary information thermodynamics of the two-mode Gaussian state.
//
// All logarithms are natural (entropies and correlations in nats).

#pragma once

#include "entroflux/linalg.hpp"
#include "entroflux/model.hpp"

#include <utility>

namespace entroflux::thermo {

using linalg::RealMatrix;
using model::CovMatrix;

struct EntropyProduction {
    double pi_s = 0.0;
    double mu_a = 0.0;
    double mu_c = 0.0;
};

struct LogNegativity {
    double e_n = 0.0;
    double nu_minus = 0.0;
};

struct ThermoReport {
    double pi_s = 0.0;
    double mu_a = 0.0;
    double mu_c = 0.0;
    double phi_s = 0.0;        // entropy flux, -pi_s at stationarity
    double mutual_info = 0.0;
    double log_neg = 0.0;
    double nu_minus = 0.0;
    double n_a_s = 0.0;
    double n_c_s = 0.0;
    bool physical = false;     // V + i Omega / 2 >= 0
};

// Time-reversal split of the drift matrix with E = diag(1, -1, 1, -1):
// A_irr = (A + E A E) / 2 and A_rev = (A - E A E) / 2.
struct DriftSplit {
    RealMatrix reversible;
    RealMatrix irreversible;
};
DriftSplit split_drift(const RealMatrix& a);

// Two-mode symplectic form, direct sum of [[0, 1], [-1, 0]].
RealMatrix symplectic_form();

// tr(A_irr) + 2 tr(A_irr^T D^-1 A_irr V). D must be diagonal with entries
// above 1e-14, otherwise DegenerateDiffusion.
double entropy_production_trace(const RealMatrix& a_irr, const RealMatrix& d, const CovMatrix& v);

// Per-mode brackets built from the feedback-corrected local equilibria.
EntropyProduction entropy_production_explicit(const model::FeedbackParams& p, const model::DerivedParams& d,
                                              const CovMatrix& v);

// Occupation form 2 kappa ((n_s + 1/2) / (n + 1/2) - 1). Coincides with the
// explicit bracket only without feedback (tau = 0).
double occupation_mu(double kappa_k, double n_k_s, double n_k);

// (<a^dag a>, <c^dag c>) from the diagonal quadrature variances; reported raw,
// so sub-vacuum blocks give negative numbers.
std::pair<double, double> mode_occupations(const CovMatrix& v);

// 1/2 ln det M. Throws NonPositiveDeterminant when det M <= 0.
double wigner_entropy(const RealMatrix& m);

double mutual_information(const CovMatrix& v);

// E_N = max(0, -ln(2 nu_-)) from the partially transposed state.
LogNegativity log_negativity(const CovMatrix& v);

bool physicality_flag(const CovMatrix& v);

// Full pipeline for a stable parameter point (throws Unstable otherwise).
ThermoReport evaluate(const model::FeedbackParams& p);
ThermoReport evaluate(const model::FeedbackParams& p, const CovMatrix& v);

}  // namespace entroflux::thermo
