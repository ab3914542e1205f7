#include "omsim/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "omsim/errors.hpp"

namespace omsim {

namespace {

using Matrix16 = Eigen::Matrix<double, 16, 16>;
using Vector16 = Eigen::Matrix<double, 16, 1>;

// Column-major vectorization of M V + V M^T = -N:
// (I kron M + M kron I) vec(V) = -vec(N).
Matrix16 lyapunov_operator(const Eigen::Matrix4d& m) {
    Matrix16 op = Matrix16::Zero();
    for (int c = 0; c < 4; ++c) {
        for (int r = 0; r < 4; ++r) {
            const int row = 4 * c + r;
            for (int k = 0; k < 4; ++k) {
                op(row, 4 * c + k) += m(r, k);  // (M V)(r, c)
                op(row, 4 * k + r) += m(c, k);  // (V M^T)(r, c)
            }
        }
    }
    return op;
}

}  // namespace

double CovarianceMatrix::physicality_margin() const {
    Eigen::Matrix4cd h = v.cast<std::complex<double>>();
    // Symplectic form for (q, p, X, Y): Omega = diag(J, J), J = [[0,1],[-1,0]].
    const std::complex<double> ih(0.0, 0.5);
    h(0, 1) += ih;
    h(1, 0) -= ih;
    h(2, 3) += ih;
    h(3, 2) -= ih;
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(h);
    return solver.eigenvalues().minCoeff();
}

CovarianceMatrix solve_lyapunov(const DriftMatrix& drift, const DiffusionMatrix& diffusion) {
    const StabilityReport stability = routh_hurwitz(drift);
    if (!stability.hurwitz_pass) {
        throw InstabilityError("drift matrix is not Hurwitz stable", "lyapunov");
    }
    if (stability.marginal) {
        throw InstabilityError("drift matrix is marginally stable", "lyapunov");
    }

    const double scale = drift.freq_scale > 0.0 ? drift.freq_scale : 1.0;
    const Eigen::Matrix4d m = drift.m / scale;
    const Eigen::Matrix4d n = diffusion.matrix() / scale;

    const Matrix16 op = lyapunov_operator(m);
    const Eigen::PartialPivLU<Matrix16> lu(op);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-14)) {
        throw NumericalError(
            "Lyapunov system condition estimate exceeds 1e14 (rcond = " +
                std::to_string(rcond) + ")",
            "lyapunov");
    }

    Vector16 rhs;
    for (int c = 0; c < 4; ++c)
        for (int r = 0; r < 4; ++r) rhs(4 * c + r) = -n(r, c);
    const Vector16 x = lu.solve(rhs);

    Eigen::Matrix4d v;
    for (int c = 0; c < 4; ++c)
        for (int r = 0; r < 4; ++r) v(r, c) = x(4 * c + r);

    CovarianceMatrix cov;
    const double vmax = v.cwiseAbs().maxCoeff();
    cov.asymmetry = vmax > 0.0 ? (v - v.transpose()).cwiseAbs().maxCoeff() / vmax : 0.0;
    cov.conditioning_warning = cov.asymmetry > 1e-9;
    cov.v = 0.5 * (v + v.transpose());

    const double nmax = n.cwiseAbs().maxCoeff();
    const double denom = std::max(nmax, std::numeric_limits<double>::epsilon());
    cov.lyapunov_residual =
        (m * cov.v + cov.v * m.transpose() + n).cwiseAbs().maxCoeff() / denom;
    if (!(cov.lyapunov_residual < 1e-10)) {
        throw NumericalError("Lyapunov residual " + std::to_string(cov.lyapunov_residual) +
                                 " exceeds 1e-10",
                             "lyapunov");
    }
    return cov;
}

EntanglementResult log_negativity(const CovarianceMatrix& cov) {
    const double det_a = cov.block_a().determinant();
    const double det_b = cov.block_b().determinant();
    const double det_c = cov.block_c().determinant();
    const double det_v = cov.v.determinant();

    EntanglementResult result;
    result.sigma = det_a + det_b - 2.0 * det_c;
    result.lyapunov_residual = cov.lyapunov_residual;

    double disc = result.sigma * result.sigma - 4.0 * det_v;
    if (disc < 0.0) {
        const double tol =
            1e-12 * std::max({result.sigma * result.sigma, 4.0 * std::abs(det_v), 1.0});
        if (disc < -tol) {
            throw NumericalError("negative discriminant in symplectic eigenvalue: " +
                                     std::to_string(disc),
                                 "log_negativity");
        }
        disc = 0.0;
    }

    const double nu2 = 0.5 * (result.sigma - std::sqrt(disc));
    if (!(nu2 > 0.0)) {
        throw NumericalError(
            "partial-transpose symplectic eigenvalue is not real positive (nu^2 = " +
                std::to_string(nu2) + "); covariance matrix unphysical",
            "log_negativity");
    }
    result.nu_minus = std::sqrt(nu2);
    // Algebraically identical to -ln 2(Sigma - sqrt(Sigma^2 - 4 det V)) / 2
    // under the vacuum-1/2 convention, but better conditioned near E_N = 0.
    result.e_n = std::max(0.0, -std::log(2.0 * result.nu_minus));
    return result;
}

const char* to_string(PointStatus s) {
    switch (s) {
        case PointStatus::ok: return "ok";
        case PointStatus::unstable: return "unstable";
        case PointStatus::marginal: return "marginal";
        case PointStatus::error: return "error";
    }
    return "error";
}

PointResult entanglement_at(const PhysicalParams& p) {
    PointResult result;

    const auto tagged = [](const char* stage, auto&& fn) {
        try {
            return fn();
        } catch (const Error& e) {
            if (e.stage().empty()) throw Error(e.error_class(), e.what(), stage);
            throw;
        } catch (const std::exception& e) {
            throw NumericalError(e.what(), stage);
        }
    };

    result.rates = tagged("derive_rates", [&] { return derive_rates(p); });
    result.steady = tagged("steady_state",
                           [&] { return solve_steady_state(*result.rates, p.detuning_s); });

    const DriftMatrix drift = build_drift(*result.rates, *result.steady);
    const DiffusionMatrix diffusion = build_diffusion(*result.rates, *result.steady);
    result.stability = tagged("routh_hurwitz", [&] { return routh_hurwitz(drift); });

    if (result.stability->marginal) {
        result.status = PointStatus::marginal;
        return result;
    }
    if (!result.stability->hurwitz_pass) {
        result.status = PointStatus::unstable;
        return result;
    }

    result.cov = tagged("lyapunov", [&] { return solve_lyapunov(drift, diffusion); });
    result.ent = tagged("log_negativity", [&] { return log_negativity(*result.cov); });
    result.status = PointStatus::ok;
    return result;
}

PointResult try_entanglement_at(const PhysicalParams& p) noexcept {
    try {
        return entanglement_at(p);
    } catch (const Error& e) {
        PointResult r;
        r.status = PointStatus::error;
        r.error_message = e.what();
        r.error_stage = e.stage();
        return r;
    } catch (const std::exception& e) {
        PointResult r;
        r.status = PointStatus::error;
        r.error_message = e.what();
        return r;
    }
}

}  // namespace omsim
