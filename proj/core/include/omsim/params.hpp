#pragma once

#include "omsim/constants.hpp"

namespace omsim {

// Exponent of the steady amplitude factor X_s in the momentum diffusion entry.
// `linear` keeps the printed form gamma_m(2 nbar + 1) + (R/sqrt(2 kappa1))^2 X_s / 2;
// `squared` replaces X_s by X_s^2 (the form an input-output derivation of the
// reactive back-action noise produces). Exposed for sensitivity studies only.
enum class XsPower { linear, squared };

// Raw laboratory inputs, SI units throughout. Frequencies are angular (rad/s);
// the config layer owns the ordinary-vs-angular quote conversion.
struct PhysicalParams {
    double wavelength = 850e-9;         // drive/cavity wavelength [m]
    double optical_q = 4e6;             // intrinsic optical quality factor
    double omega_m = two_pi * 15e6;     // mechanical resonance [rad/s]
    double mech_q = 1e6;                // mechanical quality factor
    double mass = 2e-15;                // effective oscillator mass [kg]
    double power = 0.1;                 // input drive power [W]
    double coupling_ratio = 0.3;        // kappa1 / kappa0
    double disp_coupling = two_pi * 5e16;  // dispersive slope d [rad/s per m]
    double decay_length = 100e-9;       // evanescent decay length l0 [m]
    double detuning_s = 1.8 * two_pi * 15e6;  // effective detuning Delta_s [rad/s], any sign
    double temperature = 0.05;          // bath temperature [K]
    double rc_scale = 1.0;              // multiplier on R (0 = pure dispersive)
    double dc_scale = 1.0;              // multiplier on D (0 = pure reactive)
    bool drop_gamma_in_drift = false;   // omit gamma_m from the drift matrix
    XsPower xs_power = XsPower::linear;
};

// Throws ValidationError naming the offending field.
void validate(const PhysicalParams& p);

// Rates and dimensionless couplings at the operating point. Carries everything
// the downstream dynamics needs, including the flags copied from the inputs.
struct DerivedRates {
    double omega_c;     // cavity frequency 2 pi c / lambda [rad/s]
    double omega_m;     // mechanical frequency [rad/s]
    double kappa0;      // intrinsic cavity amplitude decay omega_c / (2 Q_o) [rad/s]
    double kappa1;      // waveguide coupling rate [rad/s]
    double kappa;       // total cavity decay kappa0 + kappa1 [rad/s]
    double gamma_m;     // mechanical damping omega_m / Q_m [rad/s]
    double r_slope;     // reactive slope r = 2 kappa1 / l0 [rad/s per m]
    double x_zpf;       // zero-point length sqrt(hbar / (m omega_m)) [m]
    double coupling_d;  // dispersive coupling D = d x_zpf * dc_scale [rad/s]
    double coupling_r;  // reactive coupling R = r x_zpf * rc_scale [rad/s]
    double drive;       // drive amplitude E = sqrt(P / (hbar omega_l)) [sqrt(1/s)]
    double nbar;        // mean thermal phonon number of the bath
    bool drop_gamma_in_drift;
    XsPower xs_power;
};

DerivedRates derive_rates(const PhysicalParams& p,
                          const PhysicsConstants& k = si_constants());

// Evanescent-field model: both the cavity frequency pull and the waveguide
// coupling decay as exp(-2 x / l0) with the gap x.
struct EvanescentPoint {
    double delta_omega;  // frequency pull at gap x [rad/s]
    double kappa1;       // waveguide coupling at gap x [rad/s]
};

EvanescentPoint evanescent_profile(double gap_x, double delta_omega_at_contact,
                                   double kappa1_at_contact, double l0);

}  // namespace omsim
