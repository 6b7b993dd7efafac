#include "entroflux/thermo.hpp"

#include "entroflux/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entroflux::thermo {

namespace {

constexpr double kMinDiffusion = 1e-14;
constexpr double kDiscriminantSlack = 1e-12;
constexpr double kPhysicalitySlack = 1e-10;

const RealMatrix& time_reversal() {
    static const RealMatrix e = RealMatrix::diagonal({1.0, -1.0, 1.0, -1.0});
    return e;
}

}  // namespace

DriftSplit split_drift(const RealMatrix& a) {
    const RealMatrix& e = time_reversal();
    const RealMatrix mirrored = e * a * e.transposed();
    return {0.5 * (a - mirrored), 0.5 * (a + mirrored)};
}

RealMatrix symplectic_form() {
    return RealMatrix{
        {0.0, 1.0, 0.0, 0.0},
        {-1.0, 0.0, 0.0, 0.0},
        {0.0, 0.0, 0.0, 1.0},
        {0.0, 0.0, -1.0, 0.0},
    };
}

double entropy_production_trace(const RealMatrix& a_irr, const RealMatrix& d, const CovMatrix& v) {
    if (a_irr.rows() != 4 || d.rows() != 4 || !a_irr.square() || !d.square()) {
        throw std::invalid_argument("entropy_production_trace: expected 4x4 matrices");
    }
    RealMatrix d_inv(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j && d(i, j) != 0.0)
                throw std::invalid_argument("entropy_production_trace: diffusion matrix must be diagonal");
        if (!(d(i, i) > kMinDiffusion)) {
            throw DegenerateDiffusion("entropy_production_trace: diffusion entry " + std::to_string(i) +
                                      " is not positive");
        }
        d_inv(i, i) = 1.0 / d(i, i);
    }
    return a_irr.trace() + 2.0 * (a_irr.transposed() * d_inv * a_irr * v.matrix()).trace();
}

EntropyProduction entropy_production_explicit(const model::FeedbackParams& p, const model::DerivedParams& d,
                                              const CovMatrix& v) {
    if (!(d.k_a_diff > kMinDiffusion) || !(p.kappa_c > kMinDiffusion)) {
        throw DegenerateDiffusion("entropy_production_explicit: vanishing diffusion");
    }
    EntropyProduction ep;
    ep.mu_a = 2.0 * d.kappa_fb * ((d.kappa_fb / d.k_a_diff) * (v(0, 0) + v(1, 1)) / (2.0 * p.n_a + 1.0) - 1.0);
    ep.mu_c = 2.0 * p.kappa_c * ((v(2, 2) + v(3, 3)) / (2.0 * p.n_c + 1.0) - 1.0);
    ep.pi_s = ep.mu_a + ep.mu_c;
    return ep;
}

double occupation_mu(double kappa_k, double n_k_s, double n_k) {
    if (n_k < 0.0) throw std::invalid_argument("occupation_mu: bath occupation must be non-negative");
    return 2.0 * kappa_k * ((n_k_s + 0.5) / (n_k + 0.5) - 1.0);
}

std::pair<double, double> mode_occupations(const CovMatrix& v) {
    return {0.5 * (v(0, 0) + v(1, 1) - 1.0), 0.5 * (v(2, 2) + v(3, 3) - 1.0)};
}

double wigner_entropy(const RealMatrix& m) {
    const double det = linalg::determinant(m);
    if (!(det > 0.0)) throw NonPositiveDeterminant("wigner_entropy: det = " + std::to_string(det));
    return 0.5 * std::log(det);
}

double mutual_information(const CovMatrix& v) {
    const double det_v = linalg::determinant(v.matrix());
    const double det_a = linalg::determinant(v.block_a());
    const double det_c = linalg::determinant(v.block_c());
    if (!(det_v > 0.0) || !(det_a > 0.0) || !(det_c > 0.0)) {
        throw NonPositiveDeterminant("mutual_information: non-positive determinant");
    }
    return -0.5 * std::log(det_v / (det_a * det_c));
}

LogNegativity log_negativity(const CovMatrix& v) {
    const double det_a = linalg::determinant(v.block_a());
    const double det_c = linalg::determinant(v.block_c());
    const double det_ac = linalg::determinant(v.block_ac());
    const double det_v = linalg::determinant(v.matrix());
    // Partial transposition flips the sign of det V_ac in the seralian.
    const double seralian = det_a + det_c - 2.0 * det_ac;
    double disc = seralian * seralian - 4.0 * det_v;
    if (disc < -kDiscriminantSlack) {
        throw ComplexSymplecticEigenvalue("log_negativity: discriminant " + std::to_string(disc));
    }
    disc = std::max(disc, 0.0);
    const double inner = seralian - std::sqrt(disc);
    LogNegativity out;
    out.nu_minus = std::sqrt(std::max(inner, 0.0) / 2.0);
    out.e_n = std::max(0.0, -std::log(2.0 * out.nu_minus));
    return out;
}

bool physicality_flag(const CovMatrix& v) {
    // V + i Omega/2 is Hermitian; its real embedding [[V, -Omega/2], [Omega/2, V]]
    // is PSD exactly when it is.
    const RealMatrix omega = symplectic_form();
    RealMatrix embed(8, 8);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            embed(i, j) = v(i, j);
            embed(i + 4, j + 4) = v(i, j);
            embed(i, j + 4) = -0.5 * omega(i, j);
            embed(i + 4, j) = 0.5 * omega(i, j);
        }
    return linalg::is_symmetric_psd(embed, kPhysicalitySlack);
}

ThermoReport evaluate(const model::FeedbackParams& p, const CovMatrix& v) {
    const model::DerivedParams d = model::derive_params(p);
    const EntropyProduction ep = entropy_production_explicit(p, d, v);
    const LogNegativity ln = log_negativity(v);
    const auto [na, nc] = mode_occupations(v);

    ThermoReport r;
    r.pi_s = ep.pi_s;
    r.mu_a = ep.mu_a;
    r.mu_c = ep.mu_c;
    r.phi_s = -ep.pi_s;
    r.mutual_info = mutual_information(v);
    r.log_neg = ln.e_n;
    r.nu_minus = ln.nu_minus;
    r.n_a_s = na;
    r.n_c_s = nc;
    r.physical = physicality_flag(v);
    return r;
}

ThermoReport evaluate(const model::FeedbackParams& p) { return evaluate(p, model::steady_state(p)); }

}  // namespace entroflux::thermo
