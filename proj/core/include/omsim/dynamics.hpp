#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>

#include "omsim/params.hpp"
#include "omsim/steady_state.hpp"

namespace omsim {

// Operating point a drift matrix was linearized around.
struct WorkingPoint {
    DerivedRates rates;
    SteadyState steady;
};

// Drift matrix M of the fluctuation dynamics df = M f dt + noise over the
// basis f = (q, p, X, Y). freq_scale is the nondimensionalization frequency
// (omega_m for physical points, 1 for raw matrices).
struct DriftMatrix {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    double freq_scale = 1.0;
    bool gamma_dropped = false;
    std::optional<WorkingPoint> point;

    static DriftMatrix from_raw(const Eigen::Matrix4d& m, double freq_scale = 1.0);
};

// Diagonal noise correlator N entering M V + V M^T = -N.
struct DiffusionMatrix {
    Eigen::Vector4d diag = Eigen::Vector4d::Zero();
    double freq_scale = 1.0;

    Eigen::Matrix4d matrix() const { return diag.asDiagonal(); }

    static DiffusionMatrix from_raw(const Eigen::Vector4d& d, double freq_scale = 1.0);
};

// Quartic Routh-Hurwitz verdict plus an eigenvalue cross-check. Points with
// |max Re lambda| < 1e-9 * freq_scale are flagged marginal and excluded from
// sweeps rather than classified either way.
struct StabilityReport {
    std::array<double, 4> char_poly{};      // a1..a4 of det(sI - M)
    bool hurwitz_pass = false;
    std::array<double, 4> eig_real_parts{};
    double max_real = 0.0;
    bool marginal = false;
    bool agreement = true;                  // hurwitz verdict vs eigenvalue sign

    bool stable() const { return hurwitz_pass && !marginal; }
};

inline constexpr double marginal_band_factor = 1e-9;

DriftMatrix build_drift(const DerivedRates& rates, const SteadyState& ss);

DiffusionMatrix build_diffusion(const DerivedRates& rates, const SteadyState& ss);

StabilityReport routh_hurwitz(const DriftMatrix& drift);

}  // namespace omsim
