// optomech.hpp: Fabry-Perot optomechanics with coherent feedback on the cavity input.
//
// Rates are normalized by the mechanical frequency (omega_m = 1). The cavity
// is mode a, the mechanical resonator mode c of the generic model.

#pragma once

#include "entroflux/model.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace entroflux::optomech {

// Laser power and frequency, mapped to E = sqrt(2 P kappa_a / omega_0).
struct PowerDrive {
    double power = 0.0;
    double laser_freq = 1.0;
};

struct OptoParams {
    double omega_m = 1.0;
    double gamma_m = 1e-3;
    double kappa_a = 0.2;
    double delta_0 = 1.0;
    double g0 = 0.0;
    double drive = 0.0;                   // amplitude E, used when `power` is unset
    std::optional<PowerDrive> power;
    double tau = 0.0;
    double theta = 0.0;
    double n_a = 0.0;
    double n_c = 0.0;
    // Attenuate the drive by the beam-splitter transmission (E_eff = xi E).
    bool drive_through_splitter = true;

    double xi() const;
    double drive_amplitude() const;
    double effective_drive() const;
    void validate() const;
};

struct OptoSteadyState {
    std::complex<double> a_s;
    std::complex<double> c_s;
    double n_photon = 0.0;
    double delta_eff = 0.0;      // feedback- and radiation-pressure-shifted detuning
    std::size_t branch = 0;      // index in the ascending list of physical roots
    bool stable = false;         // slope of the drive-vs-photon-number curve is positive
};

// Feedback-shifted bare detuning Delta_0 - 2 kappa_a tau sin(theta).
double feedback_detuning(const OptoParams& p);

// Radiation-pressure shift per photon, 2 g0^2 omega_m / (omega_m^2 + gamma_m^2).
double detuning_pull(const OptoParams& p);

// All physical (real, non-negative) photon numbers of
//   n (kappa_fb^2 + (Delta_fb - chi n)^2) = E_eff^2,
// ascending, with cavity and mechanical amplitudes reconstructed.
std::vector<OptoSteadyState> mean_field_steady_state(const OptoParams& p);

// Lowest root tagged stable, or `branch` when given explicitly.
OptoSteadyState select_branch(const std::vector<OptoSteadyState>& roots, std::optional<std::size_t> branch = {});

// Max modulus residual of (i Delta' + kappa_fb) a_s = E_eff and
// (i omega_m + gamma_m) c_s = i g0 |a_s|^2.
double mean_field_residual(const OptoParams& p, const OptoSteadyState& s);

// Linearized fluctuations as a generic two-oscillator problem with the
// light-enhanced coupling g = g0 |a_s|. Throws UnstableBranch for an unstable root.
model::FeedbackParams map_to_generic(const OptoParams& p, const OptoSteadyState& s);

// Same mapping with the enhanced coupling given directly; the effective
// detuning is taken to be delta_0.
model::FeedbackParams map_to_generic_direct(const OptoParams& p, double g_enhanced);

}  // namespace entroflux::optomech
