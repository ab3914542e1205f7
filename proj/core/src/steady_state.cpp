#include "omsim/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "omsim/errors.hpp"

namespace omsim {

namespace {

constexpr const char* kStage = "steady_state";

// Intracavity amplitude for a candidate steady position, Delta_s held fixed.
double amplitude_at(const DerivedRates& r, double delta_s, double q) {
    const double kappa_s = r.kappa + r.coupling_r * q;
    const double sqrt_2k1 = std::sqrt(2.0 * r.kappa1);
    const double drive_coupling = sqrt_2k1 + r.coupling_r * q / sqrt_2k1;
    return drive_coupling * r.drive / std::sqrt(kappa_s * kappa_s + delta_s * delta_s);
}

// Fixed-point map q -> D a_s(q)^2 / omega_m.
double fixed_point_map(const DerivedRates& r, double delta_s, double q) {
    const double a = amplitude_at(r, delta_s, q);
    return r.coupling_d * a * a / r.omega_m;
}

SteadyState make_state(const DerivedRates& r, double delta_s, double q, int iterations,
                       bool multistable) {
    const double kappa_s = r.kappa + r.coupling_r * q;
    if (!(kappa_s > 0.0)) {
        throw NumericalError("fixed point has kappa_s <= 0 (unphysical)", kStage);
    }

    SteadyState ss;
    ss.q_s = q;
    ss.p_s = 0.0;
    ss.a_s = amplitude_at(r, delta_s, q);
    ss.x_s = std::sqrt(2.0) * ss.a_s;
    ss.kappa_s = kappa_s;
    ss.delta_s = delta_s;
    ss.photon_number = ss.a_s * ss.a_s;
    ss.iterations = iterations;
    ss.multistable = multistable;

    // Back-substitution residuals of the two defining equations.
    const double lhs_q = r.omega_m * ss.q_s;
    const double rhs_q = r.coupling_d * ss.a_s * ss.a_s;
    const double denom_q = std::max({std::abs(lhs_q), std::abs(rhs_q), 1e-300});
    const double res_q = std::abs(lhs_q - rhs_q) / denom_q;

    const double sqrt_2k1 = std::sqrt(2.0 * r.kappa1);
    const double lhs_a = ss.a_s * std::sqrt(kappa_s * kappa_s + delta_s * delta_s);
    const double rhs_a = (sqrt_2k1 + r.coupling_r * ss.q_s / sqrt_2k1) * r.drive;
    const double denom_a = std::max({std::abs(lhs_a), std::abs(rhs_a), 1e-300});
    const double res_a = std::abs(lhs_a - rhs_a) / denom_a;

    ss.residual = std::max(res_q, res_a);
    if (ss.q_s != 0.0 && ss.residual > 1e-8) {
        throw NumericalError("steady-state residual " + std::to_string(ss.residual) +
                                 " after convergence",
                             kStage);
    }
    return ss;
}

}  // namespace

SteadyState solve_steady_state(const DerivedRates& r, double delta_s,
                               const SteadyStateOptions& opt) {
    if (!std::isfinite(delta_s)) {
        throw ValidationError("delta_s must be finite", kStage);
    }

    // Undriven or decoupled: the fixed point is exactly q = 0.
    if (r.drive == 0.0 || r.coupling_d == 0.0) {
        return make_state(r, delta_s, 0.0, 0, false);
    }

    const auto g = [&](double q) { return q - fixed_point_map(r, delta_s, q); };

    // Damped fixed-point iteration from the undriven state; the map is
    // near-contractive at realistic parameters.
    double q_iter = 0.0;
    bool iter_converged = false;
    int used_iterations = 0;
    {
        double q = 0.0;
        for (int it = 0; it < opt.max_iterations; ++it) {
            const double next = fixed_point_map(r, delta_s, q);
            if (!std::isfinite(next)) break;
            if (std::abs(next - q) <=
                opt.rel_tol * std::max({std::abs(q), std::abs(next), 1e-300})) {
                q_iter = next;
                iter_converged = true;
                used_iterations = it + 1;
                break;
            }
            q = 0.5 * (q + next);
        }
    }

    // Bracket [0, hi] with g(hi) > 0; F is bounded so expansion terminates.
    // g(0) <= 0 always (F(0) > 0 for a driven, dispersively coupled cavity).
    const double q_estimate =
        r.coupling_d * (2.0 * r.kappa1 * r.drive * r.drive / (r.kappa * r.kappa)) / r.omega_m;
    double hi = std::max({4.0 * q_estimate, 2.0 * std::abs(q_iter), 1e-30});
    int expansions = 0;
    while (g(hi) < 0.0) {
        hi *= 2.0;
        if (++expansions > 200) {
            throw NumericalError("no sign change of q - F(q) up to q = " + std::to_string(hi),
                                 kStage);
        }
    }

    // Scan the bracket for multiple fixed-point candidates. The smallest root
    // wins; more than one sign change raises the multistability warning.
    constexpr int kScan = 512;
    int sign_changes = 0;
    double first_lo = 0.0, first_hi = hi;
    double prev_x = 0.0, prev_g = g(0.0);
    for (int i = 1; i <= kScan; ++i) {
        const double x = hi * static_cast<double>(i) / kScan;
        const double gx = g(x);
        if ((prev_g < 0.0) != (gx < 0.0)) {
            if (sign_changes == 0) {
                first_lo = prev_x;
                first_hi = x;
            }
            ++sign_changes;
        }
        prev_x = x;
        prev_g = gx;
    }
    const bool multistable = sign_changes > 1;

    if (iter_converged) {
        // Accept the iterate only if it lies in the first (smallest-root)
        // interval; otherwise it converged to a different branch.
        if (sign_changes == 0 || (q_iter >= first_lo && q_iter <= first_hi)) {
            return make_state(r, delta_s, q_iter, used_iterations, multistable);
        }
    }

    // Bisection on the first sign-change interval.
    double a = first_lo, b = first_hi;
    bool ga_neg = g(a) < 0.0;
    for (int it = 0; it < opt.max_iterations; ++it) {
        const double mid = 0.5 * (a + b);
        if ((g(mid) < 0.0) == ga_neg) {
            a = mid;
        } else {
            b = mid;
        }
        if (b - a <= opt.rel_tol * std::max({std::abs(a), std::abs(b), 1e-300})) {
            return make_state(r, delta_s, 0.5 * (a + b), it + 1, multistable);
        }
    }
    throw NumericalError("bisection did not converge; last bracket [" + std::to_string(a) +
                             ", " + std::to_string(b) + "]",
                         kStage);
}

EffectiveCouplings effective_couplings(const SteadyState& ss, const DerivedRates& r) {
    EffectiveCouplings ec;
    ec.zeta = r.coupling_d * std::sqrt(2.0 * r.kappa1) * r.drive /
              std::complex<double>(r.kappa1 + r.kappa0, ss.delta_s);
    ec.eta = r.coupling_r * r.drive / std::sqrt(r.kappa1);
    return ec;
}

}  // namespace omsim
