#pragma once

#include <complex>

#include "omsim/params.hpp"

namespace omsim {

// Classical steady state of the driven cavity + oscillator under the phase
// convention Im a_s = 0 (a_s real, non-negative).
struct SteadyState {
    double q_s = 0.0;            // steady mechanical position (zero-point units)
    double p_s = 0.0;            // steady momentum, identically zero
    double a_s = 0.0;            // real intracavity amplitude
    double x_s = 0.0;            // X_s = sqrt(2) a_s; Y_s = 0 by convention
    double kappa_s = 0.0;        // effective decay kappa + R q_s [rad/s]
    double delta_s = 0.0;        // effective detuning, echoed input [rad/s]
    double photon_number = 0.0;  // a_s^2
    double residual = 0.0;       // max normalized residual of the two defining equations
    int iterations = 0;
    bool multistable = false;    // bracket held several fixed-point candidates
};

struct SteadyStateOptions {
    double rel_tol = 1e-12;
    int max_iterations = 10000;
};

// Solves the 1-D fixed point q_s = D a_s(q_s)^2 / omega_m with Delta_s held
// fixed. Damped fixed-point iteration, falling back to bracketed bisection on
// g(q) = q - D a_s(q)^2 / omega_m with an auto-expanded bracket.
SteadyState solve_steady_state(const DerivedRates& rates, double delta_s,
                               const SteadyStateOptions& opt = {});

// Figures of merit for the waveguide trade-off discussion; diagnostics only.
struct EffectiveCouplings {
    std::complex<double> zeta;  // D sqrt(2 kappa1) E / (i Delta_s + kappa1 + kappa0)
    double eta;                 // R E / sqrt(kappa1)
};

EffectiveCouplings effective_couplings(const SteadyState& ss, const DerivedRates& rates);

}  // namespace omsim
