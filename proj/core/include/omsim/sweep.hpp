#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "omsim/entanglement.hpp"
#include "omsim/params.hpp"

namespace omsim {

enum class AxisField { delta_s, coupling_ratio, temperature, mech_q, power, rc_scale, dc_scale };
enum class Spacing { linear, log };

const char* to_string(AxisField f);
AxisField axis_field_from_string(const std::string& name);  // throws ValidationError

// One sweep axis. delta_s values are in units of omega_m; every other field
// is in the same units as the PhysicalParams member it overwrites.
struct SweepAxis {
    AxisField field = AxisField::delta_s;
    double min = 0.0;
    double max = 1.0;
    int count = 2;
    Spacing spacing = Spacing::linear;

    std::vector<double> values() const;
};

struct SweepSpec {
    PhysicalParams base;
    std::vector<SweepAxis> axes;  // 1 or 2 axes

    void validate_spec() const;  // throws ValidationError before any evaluation
};

PhysicalParams apply_axis(PhysicalParams p, AxisField f, double value);

struct RunMetadata {
    std::string version;
    std::string config_hash;  // hex FNV-1a of the canonical base config + axes
    int workers = 1;
    double elapsed_seconds = 0.0;
};

// Grid outcomes in row-major order (axis 0 outer, axis 1 inner); one record
// per point including failed/unstable ones.
struct SweepResult {
    SweepSpec spec;
    std::vector<std::vector<double>> axis_values;  // per axis
    std::vector<PointResult> points;
    RunMetadata meta;

    std::size_t index(std::size_t i, std::size_t j = 0) const;
    const PointResult& at(std::size_t i, std::size_t j = 0) const;
};

// Deterministic parallel map over the grid: results are independent of worker
// count and evaluation order. workers <= 0 picks a default from the
// OMSIM_WORKERS environment variable or hardware concurrency.
SweepResult run_sweep(const SweepSpec& spec, int workers = 0);

int resolve_worker_count(int requested);

// Parabolic refinement of the argmax of per-ratio best E_N over a 2-D
// (delta_s x coupling_ratio) sweep.
struct OptimumReport {
    double grid_argmax = 0.0;    // ratio value at the best grid point
    double refined_argmax = 0.0; // sub-grid parabolic vertex (= grid value at edges)
    double best_e_n = 0.0;
};

OptimumReport find_ratio_optimum(const SweepResult& sweep);

// Critical-temperature bisection for the E_N > 0 boundary (E_N < 1e-9 counts
// as zero). Preconditions: E_N(t_lo) > 0 and E_N monotone nonincreasing to 0
// on [t_lo, t_hi], checked by endpoint evaluation plus a 16-point prescan.
struct TcResult {
    double mech_q = 0.0;
    double t_c = 0.0;           // midpoint of the final bracket [K]
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int iterations = 0;
    double e_n_at_lo = 0.0;
    double e_n_at_hi = 0.0;
};

inline constexpr double e_n_zero_threshold = 1e-9;

TcResult critical_temperature(const PhysicalParams& base, double t_lo, double t_hi);

// Doubles t_hi from max(1 K, 2 t_lo) until E_N vanishes, then bisects.
TcResult auto_critical_temperature(const PhysicalParams& base, double t_lo = 1e-3);

// Ordinary least squares of T_c against Q_m.
struct TcFit {
    double slope = 0.0;      // K per unit Q_m
    double intercept = 0.0;  // K
    double r_squared = 0.0;
    std::vector<TcResult> points;
};

TcFit tc_vs_qm_fit(const std::vector<double>& qm_values, const PhysicalParams& base);

// Evaluates E_N at (alpha T, alpha Q_m) for each alpha and returns the max
// relative spread; requires the high-temperature regime k_B T >= 100 hbar
// omega_m and Q_m >= 1e4 at the base point.
struct CollapseResult {
    std::vector<double> alphas;
    std::vector<double> e_n;
    double max_relative_spread = 0.0;
};

CollapseResult tq_collapse_check(const PhysicalParams& base, const std::vector<double>& alphas);

std::uint64_t fnv1a_hash(const std::string& text);

}  // namespace omsim
