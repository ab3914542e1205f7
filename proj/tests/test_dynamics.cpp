#include "omsim/dynamics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "omsim/errors.hpp"
#include "support/oracles.hpp"

namespace omsim {
namespace {

struct Point {
    DerivedRates rates;
    SteadyState steady;
};

Point working_point(const PhysicalParams& p) {
    const DerivedRates r = derive_rates(p);
    return {r, solve_steady_state(r, p.detuning_s)};
}

TEST(BuildDrift, StructuralEntries) {
    const Point wp = working_point(PhysicalParams{});
    const DriftMatrix d = build_drift(wp.rates, wp.steady);

    // Row 1 is (0, omega_m, 0, 0) exactly; structural zeros are exact.
    EXPECT_EQ(d.m(0, 0), 0.0);
    EXPECT_EQ(d.m(0, 1), wp.rates.omega_m);
    EXPECT_EQ(d.m(0, 2), 0.0);
    EXPECT_EQ(d.m(0, 3), 0.0);
    EXPECT_EQ(d.m(2, 1), 0.0);
    EXPECT_EQ(d.m(3, 1), 0.0);

    // D X_s appears identically at (4,1) and (2,3).
    EXPECT_EQ(d.m(3, 0), d.m(1, 2));
    EXPECT_EQ(d.m(1, 1), -wp.rates.gamma_m);
    EXPECT_EQ(d.m(2, 2), -wp.steady.kappa_s);
    EXPECT_EQ(d.m(3, 3), -wp.steady.kappa_s);
    EXPECT_EQ(d.m(2, 3), wp.steady.delta_s);
    EXPECT_EQ(d.m(3, 2), -wp.steady.delta_s);
    EXPECT_EQ(d.freq_scale, wp.rates.omega_m);
}

TEST(BuildDrift, DecoupledBlocksAreDiagonal) {
    PhysicalParams p;
    p.dc_scale = 0.0;
    p.rc_scale = 0.0;
    const Point wp = working_point(p);
    const DriftMatrix d = build_drift(wp.rates, wp.steady);
    // Off-diagonal 2x2 corners vanish: oscillator and cavity decouple.
    EXPECT_EQ(d.m(1, 2), 0.0);
    EXPECT_EQ(d.m(1, 3), 0.0);
    EXPECT_EQ(d.m(2, 0), 0.0);
    EXPECT_EQ(d.m(3, 0), 0.0);
}

TEST(BuildDrift, GammaDropSwitch) {
    PhysicalParams p;
    p.drop_gamma_in_drift = true;
    const Point wp = working_point(p);
    const DriftMatrix d = build_drift(wp.rates, wp.steady);
    EXPECT_EQ(d.m(1, 1), 0.0);
    EXPECT_TRUE(d.gamma_dropped);
}

// Independent linearization of the nonlinear quadrature equations of motion
// (complex-step differentiation, machine accurate) against the closed-form
// drift at five random working points.
TEST(BuildDrift, MatchesComplexStepLinearization) {
    std::mt19937_64 rng(416731);
    for (int trial = 0; trial < 5; ++trial) {
        const PhysicalParams p = testing::draw_params(rng);
        const Point wp = working_point(p);
        const DriftMatrix d = build_drift(wp.rates, wp.steady);
        const Eigen::Matrix4d oracle = testing::complex_step_drift(wp.rates, wp.steady);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                const double scale =
                    std::max({std::abs(d.m(i, j)), std::abs(oracle(i, j)), 1e-30});
                EXPECT_LT(std::abs(d.m(i, j) - oracle(i, j)) / scale, 1e-12)
                    << "entry (" << i << "," << j << ") trial " << trial;
            }
        }
    }
}

TEST(BuildDiffusion, ColdUncoupledIsBareDamping) {
    PhysicalParams p;
    p.rc_scale = 0.0;
    p.temperature = 1e-6;  // nbar underflows to exactly 0
    const Point wp = working_point(p);
    const DiffusionMatrix n = build_diffusion(wp.rates, wp.steady);
    EXPECT_EQ(n.diag(0), 0.0);
    EXPECT_EQ(n.diag(1), wp.rates.gamma_m);
    EXPECT_EQ(n.diag(2), wp.rates.kappa);
    EXPECT_EQ(n.diag(3), wp.rates.kappa);
}

TEST(BuildDiffusion, RoomTemperatureMomentumEntry) {
    PhysicalParams p;
    p.rc_scale = 0.0;
    p.temperature = 300.0;
    const Point wp = working_point(p);
    const DiffusionMatrix n = build_diffusion(wp.rates, wp.steady);
    // nbar(300 K) at omega_m = 2 pi 15 MHz, frozen from an independent script.
    EXPECT_NEAR(wp.rates.nbar, 416731.88272209136, 1e-12 * 4.2e5);
    EXPECT_EQ(n.diag(1), wp.rates.gamma_m * (2.0 * wp.rates.nbar + 1.0));
}

TEST(BuildDiffusion, XsPowerConventionsAgreeAtUnitXs) {
    const Point wp = working_point(PhysicalParams{});
    SteadyState unit = wp.steady;
    unit.x_s = 1.0;

    DerivedRates lin = wp.rates;
    lin.xs_power = XsPower::linear;
    DerivedRates sq = wp.rates;
    sq.xs_power = XsPower::squared;
    EXPECT_EQ(build_diffusion(lin, unit).diag(1), build_diffusion(sq, unit).diag(1));
    EXPECT_GE(build_diffusion(lin, unit).diag(1), 0.0);
}

TEST(RouthHurwitz, NegativeSpectrumIsStable) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m.diagonal() << -1.0, -2.0, -3.0, -4.0;
    const StabilityReport rep = routh_hurwitz(DriftMatrix::from_raw(m));
    EXPECT_TRUE(rep.hurwitz_pass);
    EXPECT_TRUE(rep.stable());
    EXPECT_TRUE(rep.agreement);
    // (s+1)(s+2)(s+3)(s+4) = s^4 + 10 s^3 + 35 s^2 + 50 s + 24
    EXPECT_EQ(rep.char_poly[0], 10.0);
    EXPECT_EQ(rep.char_poly[1], 35.0);
    EXPECT_EQ(rep.char_poly[2], 50.0);
    EXPECT_EQ(rep.char_poly[3], 24.0);
}

TEST(RouthHurwitz, PositiveEigenvalueFailsWithWitness) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m.diagonal() << 1.0, -2.0, -3.0, -4.0;
    const StabilityReport rep = routh_hurwitz(DriftMatrix::from_raw(m));
    EXPECT_FALSE(rep.hurwitz_pass);
    EXPECT_FALSE(rep.stable());
    EXPECT_TRUE(rep.agreement);
    EXPECT_LT(rep.char_poly[3], 0.0);  // a4 = det(-M) < 0 is the failing condition
    EXPECT_GT(rep.max_real, 0.0);
}

TEST(RouthHurwitz, MarginalBand) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m.diagonal() << -1e-12, -1.0, -1.0, -1.0;
    const StabilityReport rep = routh_hurwitz(DriftMatrix::from_raw(m, 1.0));
    EXPECT_TRUE(rep.marginal);
    EXPECT_FALSE(rep.stable());
}

// Verdict against a dense eigensolver on random matrices (the acceptance
// suite runs the full 1e4-draw version).
TEST(RouthHurwitz, AgreesWithEigenvaluesOnRandomMatrices) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        Eigen::Matrix4d m;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) = uni(rng);
        const StabilityReport rep = routh_hurwitz(DriftMatrix::from_raw(m, 1.0));
        if (rep.marginal) continue;
        ++checked;
        EXPECT_EQ(rep.hurwitz_pass, rep.max_real < 0.0) << "trial " << trial;
        EXPECT_TRUE(rep.agreement);
    }
    EXPECT_GT(checked, 1900);
}

// Char-poly coefficients scale as c^k under M -> cM, so the roots scale by c.
TEST(RouthHurwitz, ScaleCovariance) {
    const Point wp = working_point(PhysicalParams{});
    const DriftMatrix d = build_drift(wp.rates, wp.steady);
    const StabilityReport base = routh_hurwitz(d);
    for (double c : {1e-6, 3.7, 1e6}) {
        const StabilityReport scaled =
            routh_hurwitz(DriftMatrix::from_raw(c * d.m, c * d.freq_scale));
        for (int k = 0; k < 4; ++k) {
            const double expected = base.char_poly[k] * std::pow(c, k + 1);
            EXPECT_NEAR(scaled.char_poly[k], expected, 1e-12 * std::abs(expected))
                << "c = " << c << " k = " << k;
        }
        EXPECT_EQ(scaled.hurwitz_pass, base.hurwitz_pass);
    }
}

// Stability is invariant under the basis reflection q -> -q, X -> -X.
TEST(RouthHurwitz, ReflectionSimilarityInvariance) {
    const Point wp = working_point(PhysicalParams{});
    const DriftMatrix d = build_drift(wp.rates, wp.steady);
    Eigen::Matrix4d s = Eigen::Matrix4d::Identity();
    s(0, 0) = -1.0;
    s(2, 2) = -1.0;
    const Eigen::Matrix4d reflected = s * d.m * s;

    const StabilityReport a = routh_hurwitz(d);
    const StabilityReport b = routh_hurwitz(DriftMatrix::from_raw(reflected, d.freq_scale));
    EXPECT_EQ(a.hurwitz_pass, b.hurwitz_pass);
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(b.char_poly[k], a.char_poly[k],
                    1e-14 * std::max(1.0, std::abs(a.char_poly[k])));
    }
}

TEST(RouthHurwitz, RejectsNonFiniteEntries) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m(2, 2) = std::nan("");
    EXPECT_THROW(routh_hurwitz(DriftMatrix::from_raw(m)), ValidationError);
}

}  // namespace
}  // namespace omsim
