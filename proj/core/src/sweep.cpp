#include "omsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "omsim/config.hpp"
#include "omsim/errors.hpp"
#include "omsim/version.hpp"

namespace omsim {

const char* to_string(AxisField f) {
    switch (f) {
        case AxisField::delta_s: return "delta_s";
        case AxisField::coupling_ratio: return "coupling_ratio";
        case AxisField::temperature: return "temperature";
        case AxisField::mech_q: return "mech_q";
        case AxisField::power: return "power";
        case AxisField::rc_scale: return "rc_scale";
        case AxisField::dc_scale: return "dc_scale";
    }
    return "?";
}

AxisField axis_field_from_string(const std::string& name) {
    for (AxisField f : {AxisField::delta_s, AxisField::coupling_ratio, AxisField::temperature,
                        AxisField::mech_q, AxisField::power, AxisField::rc_scale,
                        AxisField::dc_scale}) {
        if (name == to_string(f)) return f;
    }
    throw ValidationError("unknown sweep axis '" + name +
                          "' (valid: delta_s, coupling_ratio, temperature, mech_q, power, "
                          "rc_scale, dc_scale)");
}

std::vector<double> SweepAxis::values() const {
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
        v.push_back(min);
        return v;
    }
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        if (spacing == Spacing::linear) {
            v.push_back(min + (max - min) * t);
        } else {
            v.push_back(min * std::pow(max / min, t));
        }
    }
    return v;
}

PhysicalParams apply_axis(PhysicalParams p, AxisField f, double value) {
    switch (f) {
        case AxisField::delta_s: p.detuning_s = value * p.omega_m; break;
        case AxisField::coupling_ratio: p.coupling_ratio = value; break;
        case AxisField::temperature: p.temperature = value; break;
        case AxisField::mech_q: p.mech_q = value; break;
        case AxisField::power: p.power = value; break;
        case AxisField::rc_scale: p.rc_scale = value; break;
        case AxisField::dc_scale: p.dc_scale = value; break;
    }
    return p;
}

void SweepSpec::validate_spec() const {
    if (axes.empty() || axes.size() > 2) {
        throw ValidationError("sweep needs 1 or 2 axes, got " + std::to_string(axes.size()));
    }
    if (axes.size() == 2 && axes[0].field == axes[1].field) {
        throw ValidationError(std::string("both axes sweep ") + to_string(axes[0].field));
    }
    for (const auto& axis : axes) {
        const std::string name = to_string(axis.field);
        if (axis.count < 1) {
            throw ValidationError("axis " + name + ": count must be >= 1");
        }
        if (axis.count >= 2 && !(axis.min < axis.max)) {
            throw ValidationError("axis " + name + ": min must be < max");
        }
        if (axis.spacing == Spacing::log && !(axis.min > 0.0)) {
            throw ValidationError("axis " + name + ": log spacing requires min > 0");
        }
    }
    validate(base);
    // The endpoints must produce valid parameter sets before any evaluation.
    for (const auto& axis : axes) {
        validate(apply_axis(base, axis.field, axis.min));
        validate(apply_axis(base, axis.field, axis.max));
    }
}

std::size_t SweepResult::index(std::size_t i, std::size_t j) const {
    const std::size_t inner = axis_values.size() == 2 ? axis_values[1].size() : 1;
    return i * inner + j;
}

const PointResult& SweepResult::at(std::size_t i, std::size_t j) const {
    return points.at(index(i, j));
}

int resolve_worker_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("OMSIM_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::uint64_t fnv1a_hash(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

SweepResult run_sweep(const SweepSpec& spec, int workers) {
    spec.validate_spec();
    const auto t0 = std::chrono::steady_clock::now();

    SweepResult result;
    result.spec = spec;
    for (const auto& axis : spec.axes) result.axis_values.push_back(axis.values());

    const std::size_t n0 = result.axis_values[0].size();
    const std::size_t n1 = result.axis_values.size() == 2 ? result.axis_values[1].size() : 1;
    const std::size_t total = n0 * n1;
    result.points.resize(total);

    const int nworkers = std::max(1, std::min<int>(resolve_worker_count(workers),
                                                   static_cast<int>(total)));

    std::atomic<std::size_t> cursor{0};
    const auto evaluate = [&] {
        for (;;) {
            const std::size_t idx = cursor.fetch_add(1);
            if (idx >= total) break;
            PhysicalParams p = spec.base;
            p = apply_axis(p, spec.axes[0].field, result.axis_values[0][idx / n1]);
            if (result.axis_values.size() == 2) {
                p = apply_axis(p, spec.axes[1].field, result.axis_values[1][idx % n1]);
            }
            result.points[idx] = try_entanglement_at(p);
        }
    };

    if (nworkers == 1) {
        evaluate();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nworkers));
        for (int i = 0; i < nworkers; ++i) pool.emplace_back(evaluate);
        for (auto& t : pool) t.join();
    }

    std::ostringstream hash_input;
    hash_input << serialize_config(spec.base);
    for (const auto& axis : spec.axes) {
        hash_input << to_string(axis.field) << ':' << axis.min << ':' << axis.max << ':'
                   << axis.count << ':' << (axis.spacing == Spacing::log ? "log" : "linear")
                   << '\n';
    }
    std::ostringstream hex;
    hex << std::hex << fnv1a_hash(hash_input.str());
    result.meta.config_hash = hex.str();
    result.meta.version = version_string;
    result.meta.workers = nworkers;
    result.meta.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

OptimumReport find_ratio_optimum(const SweepResult& sweep) {
    if (sweep.axis_values.size() != 2 || sweep.spec.axes[1].field != AxisField::coupling_ratio) {
        throw ValidationError("ratio optimum needs a 2-D sweep with coupling_ratio as axis 2");
    }
    const auto& ratios = sweep.axis_values[1];
    const std::size_t n0 = sweep.axis_values[0].size();

    // Best stable E_N per ratio, maximized over the first axis.
    std::vector<double> best(ratios.size(), 0.0);
    for (std::size_t j = 0; j < ratios.size(); ++j) {
        for (std::size_t i = 0; i < n0; ++i) {
            best[j] = std::max(best[j], sweep.at(i, j).e_n_or_zero());
        }
    }
    const std::size_t jmax = static_cast<std::size_t>(
        std::max_element(best.begin(), best.end()) - best.begin());

    OptimumReport report;
    report.grid_argmax = ratios[jmax];
    report.refined_argmax = ratios[jmax];
    report.best_e_n = best[jmax];
    if (jmax > 0 && jmax + 1 < ratios.size()) {
        // Parabola through the three points around the grid argmax.
        const double h = ratios[jmax + 1] - ratios[jmax];  // uniform grids only
        const double fm = best[jmax - 1], f0 = best[jmax], fp = best[jmax + 1];
        const double curv = fm - 2.0 * f0 + fp;
        if (curv < 0.0) {
            report.refined_argmax = ratios[jmax] + 0.5 * h * (fm - fp) / curv;
        }
    }
    return report;
}

namespace {

double e_n_at_temperature(const PhysicalParams& base, double temperature) {
    PhysicalParams p = base;
    p.temperature = temperature;
    const PointResult r = entanglement_at(p);
    if (r.status == PointStatus::error) {
        throw NumericalError("pipeline failed at T = " + std::to_string(temperature) + " K",
                             "critical_temperature");
    }
    return r.e_n_or_zero();
}

}  // namespace

TcResult critical_temperature(const PhysicalParams& base, double t_lo, double t_hi) {
    if (!(t_lo > 0.0) || !(t_hi > t_lo)) {
        throw ValidationError("need 0 < t_lo < t_hi", "critical_temperature");
    }
    const double e_lo = e_n_at_temperature(base, t_lo);
    const double e_hi = e_n_at_temperature(base, t_hi);
    if (e_lo <= e_n_zero_threshold) {
        throw NumericalError("E_N(t_lo) = " + std::to_string(e_lo) +
                                 " does not bracket the boundary (expected > 0)",
                             "critical_temperature");
    }
    if (e_hi > e_n_zero_threshold) {
        throw NumericalError("E_N(t_hi) = " + std::to_string(e_hi) +
                                 " does not bracket the boundary (expected 0)",
                             "critical_temperature");
    }

    // Coarse prescan guarding against non-monotone E_N(T); report rather than
    // bisect a multimodal curve.
    constexpr int kPrescan = 16;
    double prev = e_lo;
    for (int i = 1; i < kPrescan; ++i) {
        const double t = t_lo + (t_hi - t_lo) * i / (kPrescan - 1);
        const double e = e_n_at_temperature(base, t);
        if (e > prev + std::max(1e-9, 1e-6 * e_lo)) {
            throw NumericalError("E_N(T) is not monotone on the bracket (rise at T = " +
                                     std::to_string(t) + " K)",
                                 "critical_temperature");
        }
        prev = e;
    }

    TcResult tc;
    tc.mech_q = base.mech_q;
    double lo = t_lo, hi = t_hi;
    double e_at_lo = e_lo, e_at_hi = e_hi;
    int it = 0;
    while (0.5 * (hi - lo) > std::max(1e-3 * 0.5 * (hi + lo), 1e-3)) {
        const double mid = 0.5 * (lo + hi);
        const double e = e_n_at_temperature(base, mid);
        if (e > e_n_zero_threshold) {
            lo = mid;
            e_at_lo = e;
        } else {
            hi = mid;
            e_at_hi = e;
        }
        ++it;
    }
    tc.t_c = 0.5 * (lo + hi);
    tc.bracket_lo = lo;
    tc.bracket_hi = hi;
    tc.iterations = it;
    tc.e_n_at_lo = e_at_lo;
    tc.e_n_at_hi = e_at_hi;
    return tc;
}

TcResult auto_critical_temperature(const PhysicalParams& base, double t_lo) {
    double t_hi = std::max(1.0, 2.0 * t_lo);
    int doublings = 0;
    while (e_n_at_temperature(base, t_hi) > e_n_zero_threshold) {
        t_hi *= 2.0;
        if (++doublings > 40) {
            throw NumericalError("E_N still positive at T = " + std::to_string(t_hi) + " K",
                                 "critical_temperature");
        }
    }
    return critical_temperature(base, t_lo, t_hi);
}

TcFit tc_vs_qm_fit(const std::vector<double>& qm_values, const PhysicalParams& base) {
    if (qm_values.size() < 4) {
        throw ValidationError("fit needs >= 4 Q_m values, got " +
                                  std::to_string(qm_values.size()),
                              "tc_vs_qm_fit");
    }
    const auto [mn, mx] = std::minmax_element(qm_values.begin(), qm_values.end());
    if (!(*mx / *mn >= 100.0)) {
        throw ValidationError("Q_m values must span at least two decades", "tc_vs_qm_fit");
    }

    TcFit fit;
    std::string failures;
    for (double qm : qm_values) {
        PhysicalParams p = base;
        p.mech_q = qm;
        try {
            fit.points.push_back(auto_critical_temperature(p));
        } catch (const Error& e) {
            failures += (failures.empty() ? "" : "; ") + std::string("Q_m = ") +
                        std::to_string(qm) + ": " + e.what();
        }
    }
    if (!failures.empty()) {
        throw NumericalError("T_c failed for: " + failures, "tc_vs_qm_fit");
    }

    const std::size_t n = fit.points.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& p : fit.points) {
        sx += p.mech_q;
        sy += p.t_c;
        sxx += p.mech_q * p.mech_q;
        sxy += p.mech_q * p.t_c;
    }
    const double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;

    const double mean_y = sy / n;
    double ss_res = 0.0, ss_tot = 0.0;
    for (const auto& p : fit.points) {
        const double pred = fit.slope * p.mech_q + fit.intercept;
        ss_res += (p.t_c - pred) * (p.t_c - pred);
        ss_tot += (p.t_c - mean_y) * (p.t_c - mean_y);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

CollapseResult tq_collapse_check(const PhysicalParams& base, const std::vector<double>& alphas) {
    const PhysicsConstants k = si_constants();
    if (!(k.k_b * base.temperature >= 100.0 * k.hbar * base.omega_m)) {
        throw ValidationError("collapse check requires the high-T regime k_B T >= 100 hbar "
                              "omega_m at the base point",
                              "tq_collapse_check");
    }
    if (!(base.mech_q >= 1e4)) {
        throw ValidationError("collapse check requires Q_m >= 1e4", "tq_collapse_check");
    }
    if (alphas.empty()) {
        throw ValidationError("need at least one alpha", "tq_collapse_check");
    }

    CollapseResult result;
    result.alphas = alphas;
    for (double alpha : alphas) {
        PhysicalParams p = base;
        p.temperature = alpha * base.temperature;
        p.mech_q = alpha * base.mech_q;
        const PointResult r = try_entanglement_at(p);
        if (r.status == PointStatus::unstable || r.status == PointStatus::marginal) {
            throw InstabilityError("point unstable at alpha = " + std::to_string(alpha),
                                   "tq_collapse_check");
        }
        if (r.status == PointStatus::error) {
            throw NumericalError("pipeline failed at alpha = " + std::to_string(alpha) + ": " +
                                     r.error_message,
                                 "tq_collapse_check");
        }
        result.e_n.push_back(r.e_n_or_zero());
    }

    const auto [mn, mx] = std::minmax_element(result.e_n.begin(), result.e_n.end());
    double mean = 0.0;
    for (double e : result.e_n) mean += e;
    mean /= static_cast<double>(result.e_n.size());
    result.max_relative_spread = mean > 0.0 ? (*mx - *mn) / mean : 0.0;
    return result;
}

}  // namespace omsim
