#include "omsim/params.hpp"

#include <cmath>
#include <string>

#include "omsim/errors.hpp"

namespace omsim {

namespace {

void require_positive(double value, const char* field) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw ValidationError(std::string(field) + " must be finite and > 0, got " +
                              std::to_string(value));
    }
}

void require_nonnegative(double value, const char* field) {
    if (!std::isfinite(value) || value < 0.0) {
        throw ValidationError(std::string(field) + " must be finite and >= 0, got " +
                              std::to_string(value));
    }
}

}  // namespace

void validate(const PhysicalParams& p) {
    require_positive(p.wavelength, "wavelength");
    require_positive(p.optical_q, "optical_q");
    require_positive(p.omega_m, "omega_m");
    require_positive(p.mech_q, "mech_q");
    require_positive(p.mass, "mass");
    require_positive(p.power, "power");
    require_positive(p.coupling_ratio, "coupling_ratio");
    require_positive(p.disp_coupling, "disp_coupling");
    require_positive(p.decay_length, "decay_length");
    require_positive(p.temperature, "temperature");
    require_nonnegative(p.rc_scale, "rc_scale");
    require_nonnegative(p.dc_scale, "dc_scale");
    if (!std::isfinite(p.detuning_s)) {
        throw ValidationError("detuning_s must be finite");
    }
}

DerivedRates derive_rates(const PhysicalParams& p, const PhysicsConstants& k) {
    validate(p);

    DerivedRates r{};
    r.omega_c = two_pi * k.c / p.wavelength;
    r.omega_m = p.omega_m;
    r.kappa0 = r.omega_c / (2.0 * p.optical_q);
    r.kappa1 = p.coupling_ratio * r.kappa0;
    r.kappa = r.kappa0 + r.kappa1;
    r.gamma_m = p.omega_m / p.mech_q;
    r.r_slope = 2.0 * r.kappa1 / p.decay_length;
    r.x_zpf = std::sqrt(k.hbar / (p.mass * p.omega_m));
    r.coupling_d = p.disp_coupling * r.x_zpf * p.dc_scale;
    r.coupling_r = r.r_slope * r.x_zpf * p.rc_scale;
    // omega_l ~ omega_c; the difference is below double resolution here
    r.drive = std::sqrt(p.power / (k.hbar * r.omega_c));
    r.nbar = 1.0 / std::expm1(k.hbar * p.omega_m / (k.k_b * p.temperature));
    r.drop_gamma_in_drift = p.drop_gamma_in_drift;
    r.xs_power = p.xs_power;
    return r;
}

EvanescentPoint evanescent_profile(double gap_x, double delta_omega_at_contact,
                                   double kappa1_at_contact, double l0) {
    if (!std::isfinite(gap_x) || gap_x < 0.0) {
        throw ValidationError("gap_x must be finite and >= 0");
    }
    if (!std::isfinite(l0) || l0 <= 0.0) {
        throw ValidationError("decay length l0 must be finite and > 0");
    }
    const double factor = std::exp(-2.0 * gap_x / l0);
    return {delta_omega_at_contact * factor, kappa1_at_contact * factor};
}

}  // namespace omsim
