#include "omsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "omsim/errors.hpp"

namespace omsim {

DriftMatrix DriftMatrix::from_raw(const Eigen::Matrix4d& m, double freq_scale) {
    DriftMatrix d;
    d.m = m;
    d.freq_scale = freq_scale;
    return d;
}

DiffusionMatrix DiffusionMatrix::from_raw(const Eigen::Vector4d& diag, double freq_scale) {
    DiffusionMatrix n;
    n.diag = diag;
    n.freq_scale = freq_scale;
    return n;
}

DriftMatrix build_drift(const DerivedRates& r, const SteadyState& ss) {
    const double gamma = r.drop_gamma_in_drift ? 0.0 : r.gamma_m;
    const double re_k1 = r.coupling_r * r.drive / std::sqrt(r.kappa1);
    const double d_xs = r.coupling_d * ss.x_s;

    DriftMatrix d;
    d.m << 0.0, r.omega_m, 0.0, 0.0,
        -r.omega_m, -gamma, d_xs, -re_k1,
        re_k1 - r.coupling_r * ss.x_s, 0.0, -ss.kappa_s, ss.delta_s,
        d_xs, 0.0, -ss.delta_s, -ss.kappa_s;
    d.freq_scale = r.omega_m;
    d.gamma_dropped = r.drop_gamma_in_drift;
    d.point = WorkingPoint{r, ss};
    return d;
}

DiffusionMatrix build_diffusion(const DerivedRates& r, const SteadyState& ss) {
    const double xs_pow =
        r.xs_power == XsPower::linear ? ss.x_s : ss.x_s * ss.x_s;
    const double reactive_noise =
        r.coupling_r * r.coupling_r / (2.0 * r.kappa1) * xs_pow / 2.0;

    DiffusionMatrix n;
    n.diag << 0.0, r.gamma_m * (2.0 * r.nbar + 1.0) + reactive_noise, r.kappa, r.kappa;
    n.freq_scale = r.omega_m;
    return n;
}

namespace {

// Characteristic polynomial s^4 + a1 s^3 + a2 s^2 + a3 s + a4 of det(sI - M)
// via sums of principal minors.
std::array<double, 4> char_poly_coefficients(const Eigen::Matrix4d& m) {
    const auto minor2 = [&](int i, int j) {
        return m(i, i) * m(j, j) - m(i, j) * m(j, i);
    };
    const auto minor3 = [&](int i, int j, int k) {
        return m(i, i) * (m(j, j) * m(k, k) - m(j, k) * m(k, j)) -
               m(i, j) * (m(j, i) * m(k, k) - m(j, k) * m(k, i)) +
               m(i, k) * (m(j, i) * m(k, j) - m(j, j) * m(k, i));
    };

    const double a1 = -m.trace();
    const double a2 = minor2(0, 1) + minor2(0, 2) + minor2(0, 3) + minor2(1, 2) +
                      minor2(1, 3) + minor2(2, 3);
    const double a3 = -(minor3(0, 1, 2) + minor3(0, 1, 3) + minor3(0, 2, 3) + minor3(1, 2, 3));
    const double a4 = m.determinant();
    return {a1, a2, a3, a4};
}

}  // namespace

StabilityReport routh_hurwitz(const DriftMatrix& drift) {
    if (!drift.m.allFinite()) {
        throw ValidationError("drift matrix has non-finite entries", "routh_hurwitz");
    }

    StabilityReport report;
    report.char_poly = char_poly_coefficients(drift.m);
    const auto [a1, a2, a3, a4] = report.char_poly;

    // Quartic Hurwitz conditions (a3 > 0 is implied by the last two).
    const double d2 = a1 * a2 - a3;
    const double d3 = d2 * a3 - a1 * a1 * a4;
    report.hurwitz_pass = a1 > 0.0 && a4 > 0.0 && d2 > 0.0 && d3 > 0.0;

    const Eigen::EigenSolver<Eigen::Matrix4d> solver(drift.m, false);
    const auto eigs = solver.eigenvalues();
    double max_real = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) {
        report.eig_real_parts[i] = eigs(i).real();
        max_real = std::max(max_real, eigs(i).real());
    }
    report.max_real = max_real;
    report.marginal = std::abs(max_real) < marginal_band_factor * drift.freq_scale;
    report.agreement = report.marginal || (report.hurwitz_pass == (max_real < 0.0));
    return report;
}

}  // namespace omsim
