#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "omsim/dynamics.hpp"

namespace omsim {

// Steady-state correlation matrix V_ij = <f_i f_j + f_j f_i>/2 over
// (q, p, X, Y); vacuum variance 1/2. Blocks: mechanical A, optical B, cross C.
struct CovarianceMatrix {
    Eigen::Matrix4d v = Eigen::Matrix4d::Zero();
    double lyapunov_residual = 0.0;  // ||MV + VM^T + N||_max / ||N||_max, scaled units
    double asymmetry = 0.0;          // pre-symmetrization ||V - V^T||_max / ||V||_max
    bool conditioning_warning = false;

    Eigen::Matrix2d block_a() const { return v.topLeftCorner<2, 2>(); }
    Eigen::Matrix2d block_b() const { return v.bottomRightCorner<2, 2>(); }
    Eigen::Matrix2d block_c() const { return v.topRightCorner<2, 2>(); }

    // min eigenvalue of V + (i/2) Omega; >= 0 (up to noise) for physical states
    double physicality_margin() const;
};

struct EntanglementResult {
    double e_n = 0.0;       // logarithmic negativity, max(0, -ln 2 nu_minus)
    double sigma = 0.0;     // det A + det B - 2 det C
    double nu_minus = 0.0;  // smallest partial-transpose symplectic eigenvalue
    double lyapunov_residual = 0.0;
};

// Direct vectorized 16x16 solve of M V + V M^T = -N after dividing both by
// freq_scale. Requires M stable (Routh-Hurwitz certified); throws
// InstabilityError otherwise, NumericalError on conditioning failure.
CovarianceMatrix solve_lyapunov(const DriftMatrix& drift, const DiffusionMatrix& diffusion);

EntanglementResult log_negativity(const CovarianceMatrix& cov);

enum class PointStatus { ok, unstable, marginal, error };

const char* to_string(PointStatus s);

// Full pipeline outcome at one parameter point. Unstable and marginal points
// are reported with their diagnostics and no E_N, never silently zeroed.
struct PointResult {
    PointStatus status = PointStatus::error;
    std::optional<DerivedRates> rates;
    std::optional<SteadyState> steady;
    std::optional<StabilityReport> stability;
    std::optional<CovarianceMatrix> cov;
    std::optional<EntanglementResult> ent;
    std::string error_message;  // only for status == error
    std::string error_stage;

    bool has_e_n() const { return status == PointStatus::ok && ent.has_value(); }
    double e_n_or_zero() const { return has_e_n() ? ent->e_n : 0.0; }
};

// derive -> steady state -> drift/diffusion -> stability -> Lyapunov -> E_N.
// Throws stage-tagged errors; instability is a reported status, not an error.
PointResult entanglement_at(const PhysicalParams& p);

// Same pipeline with per-point error capture (for sweep workers).
PointResult try_entanglement_at(const PhysicalParams& p) noexcept;

}  // namespace omsim
