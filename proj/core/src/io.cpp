#include "omsim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "omsim/errors.hpp"

namespace omsim {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* csv_axis_name(AxisField f) {
    switch (f) {
        case AxisField::delta_s: return "delta_s_over_omega_m";
        case AxisField::temperature: return "temperature_k";
        case AxisField::power: return "power_w";
        default: return to_string(f);
    }
}

// Flat record: every defined scalar of the pipeline stages, stability
// diagnostics and the 10 unique covariance entries.
ordered_json record_json(const PointResult& r) {
    ordered_json j;
    j["status"] = to_string(r.status);
    if (r.rates) {
        j["omega_m_rad_s"] = r.rates->omega_m;
        j["kappa0_rad_s"] = r.rates->kappa0;
        j["kappa1_rad_s"] = r.rates->kappa1;
        j["kappa_rad_s"] = r.rates->kappa;
        j["gamma_m_rad_s"] = r.rates->gamma_m;
        j["coupling_d_rad_s"] = r.rates->coupling_d;
        j["coupling_r_rad_s"] = r.rates->coupling_r;
        j["drive"] = r.rates->drive;
        j["nbar"] = r.rates->nbar;
    }
    if (r.steady) {
        j["q_s"] = r.steady->q_s;
        j["p_s"] = r.steady->p_s;
        j["a_s"] = r.steady->a_s;
        j["x_s"] = r.steady->x_s;
        j["kappa_s_rad_s"] = r.steady->kappa_s;
        j["delta_s_rad_s"] = r.steady->delta_s;
        j["photon_number"] = r.steady->photon_number;
        j["steady_residual"] = r.steady->residual;
        j["steady_iterations"] = r.steady->iterations;
        j["multistable"] = r.steady->multistable;
    }
    if (r.stability) {
        j["char_a1"] = r.stability->char_poly[0];
        j["char_a2"] = r.stability->char_poly[1];
        j["char_a3"] = r.stability->char_poly[2];
        j["char_a4"] = r.stability->char_poly[3];
        j["hurwitz_pass"] = r.stability->hurwitz_pass;
        for (int i = 0; i < 4; ++i) {
            j["eig_re_" + std::to_string(i)] = r.stability->eig_real_parts[i];
        }
        j["max_re"] = r.stability->max_real;
        j["stability_marginal"] = r.stability->marginal;
        j["stability_agreement"] = r.stability->agreement;
    }
    if (r.cov) {
        static const char* names[4] = {"q", "p", "x", "y"};
        for (int a = 0; a < 4; ++a) {
            for (int b = a; b < 4; ++b) {
                j[std::string("v_") + names[a] + names[b]] = r.cov->v(a, b);
            }
        }
        j["v_asymmetry"] = r.cov->asymmetry;
    }
    if (r.ent) {
        j["e_n"] = r.ent->e_n;
        j["sigma"] = r.ent->sigma;
        j["nu_minus"] = r.ent->nu_minus;
        j["lyapunov_residual"] = r.ent->lyapunov_residual;
    }
    if (r.status == PointStatus::error) {
        j["error"] = r.error_message;
        j["error_stage"] = r.error_stage;
    }
    return j;
}

ordered_json axes_json(const SweepResult& sweep) {
    ordered_json axes = ordered_json::array();
    for (std::size_t k = 0; k < sweep.spec.axes.size(); ++k) {
        const auto& axis = sweep.spec.axes[k];
        ordered_json a;
        a["field"] = to_string(axis.field);
        a["min"] = axis.min;
        a["max"] = axis.max;
        a["count"] = axis.count;
        a["spacing"] = axis.spacing == Spacing::log ? "log" : "linear";
        a["values"] = sweep.axis_values[k];
        axes.push_back(a);
    }
    return axes;
}

ordered_json points_json(const SweepResult& sweep) {
    ordered_json points = ordered_json::array();
    const std::size_t n1 = sweep.axis_values.size() == 2 ? sweep.axis_values[1].size() : 1;
    for (std::size_t idx = 0; idx < sweep.points.size(); ++idx) {
        ordered_json j;
        j[csv_axis_name(sweep.spec.axes[0].field)] = sweep.axis_values[0][idx / n1];
        if (sweep.axis_values.size() == 2) {
            j[csv_axis_name(sweep.spec.axes[1].field)] = sweep.axis_values[1][idx % n1];
        }
        j.update(record_json(sweep.points[idx]));
        points.push_back(j);
    }
    return points;
}

ordered_json metadata_json(const RunMetadata& meta) {
    ordered_json m;
    m["version"] = meta.version;
    m["config_hash"] = meta.config_hash;
    m["workers"] = meta.workers;
    m["elapsed_seconds"] = meta.elapsed_seconds;
    return m;
}

void csv_cell(std::ostream& os, double x, bool defined) {
    if (defined) os << format_g17(x);
}

ordered_json tc_json(const TcResult& tc) {
    ordered_json j;
    j["mech_q"] = tc.mech_q;
    j["t_c_k"] = tc.t_c;
    j["bracket_lo_k"] = tc.bracket_lo;
    j["bracket_hi_k"] = tc.bracket_hi;
    j["iterations"] = tc.iterations;
    j["e_n_at_lo"] = tc.e_n_at_lo;
    j["e_n_at_hi"] = tc.e_n_at_hi;
    return j;
}

}  // namespace

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string point_to_json(const PointResult& point, int indent) {
    return record_json(point).dump(indent) + "\n";
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep,
                     const std::optional<std::string>& series, bool header) {
    if (header) {
        if (series) os << "series,";
        os << csv_axis_name(sweep.spec.axes[0].field);
        if (sweep.spec.axes.size() == 2) os << ',' << csv_axis_name(sweep.spec.axes[1].field);
        os << ",e_n,status,q_s,x_s,nu_minus,lyap_residual\n";
    }
    const std::size_t n1 = sweep.axis_values.size() == 2 ? sweep.axis_values[1].size() : 1;
    for (std::size_t idx = 0; idx < sweep.points.size(); ++idx) {
        const PointResult& r = sweep.points[idx];
        if (series) os << *series << ',';
        os << format_g17(sweep.axis_values[0][idx / n1]);
        if (sweep.axis_values.size() == 2) {
            os << ',' << format_g17(sweep.axis_values[1][idx % n1]);
        }
        os << ',';
        csv_cell(os, r.ent ? r.ent->e_n : 0.0, r.ent.has_value());
        os << ',' << to_string(r.status) << ',';
        csv_cell(os, r.steady ? r.steady->q_s : 0.0, r.steady.has_value());
        os << ',';
        csv_cell(os, r.steady ? r.steady->x_s : 0.0, r.steady.has_value());
        os << ',';
        csv_cell(os, r.ent ? r.ent->nu_minus : 0.0, r.ent.has_value());
        os << ',';
        csv_cell(os, r.ent ? r.ent->lyapunov_residual : 0.0, r.ent.has_value());
        os << '\n';
    }
}

std::string sweep_to_json(const SweepResult& sweep, int indent) {
    ordered_json doc;
    doc["metadata"] = metadata_json(sweep.meta);
    doc["axes"] = axes_json(sweep);
    doc["points"] = points_json(sweep);
    return doc.dump(indent) + "\n";
}

std::string sweep_payload_json(const SweepResult& sweep, int indent) {
    ordered_json doc;
    doc["axes"] = axes_json(sweep);
    doc["points"] = points_json(sweep);
    return doc.dump(indent) + "\n";
}

std::string tc_result_to_json(const TcResult& tc, int indent) {
    return tc_json(tc).dump(indent) + "\n";
}

std::string tc_fit_to_json(const TcFit& fit, int indent) {
    ordered_json j;
    j["slope_k_per_qm"] = fit.slope;
    j["intercept_k"] = fit.intercept;
    j["r_squared"] = fit.r_squared;
    ordered_json pts = ordered_json::array();
    for (const auto& tc : fit.points) pts.push_back(tc_json(tc));
    j["points"] = pts;
    return j.dump(indent) + "\n";
}

std::string collapse_to_json(const CollapseResult& c, int indent) {
    ordered_json j;
    j["alphas"] = c.alphas;
    j["e_n"] = c.e_n;
    j["max_relative_spread"] = c.max_relative_spread;
    return j.dump(indent) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw NumericalError("cannot open '" + path + "' for writing", "io");
    }
    out << content;
    if (!out) {
        throw NumericalError("failed writing '" + path + "'", "io");
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace omsim
