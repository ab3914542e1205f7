#include "omsim/presets.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "omsim/config.hpp"
#include "omsim/errors.hpp"
#include "omsim/io.hpp"
#include "omsim/sweep.hpp"
#include "omsim/version.hpp"

namespace omsim {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Series {
    std::string label;
    PhysicalParams base;
};

struct FixedKey {
    std::string key;
    std::string value;
};

// Keys the figure caption pins are "fixed"; keys an axis or a series varies
// are "varied"; everything else is inherited from the base parameter set.
ordered_json preset_metadata(const std::string& name, const PhysicalParams& effective_base,
                             const std::vector<FixedKey>& fixed,
                             const std::vector<std::string>& varied, double elapsed,
                             int workers) {
    ordered_json meta;
    meta["preset"] = name;
    meta["version"] = version_string;
    meta["config_hash"] = config_hash(effective_base);
    meta["workers"] = workers;
    meta["elapsed_seconds"] = elapsed;
    ordered_json f;
    for (const auto& fk : fixed) f[fk.key] = fk.value;
    meta["caption_fixed"] = f;
    meta["varied_keys"] = varied;

    const auto mentions = [&](const std::string& key) {
        if (key == "angular_quotes") return true;  // quote convention, not a parameter
        for (const auto& fk : fixed) {
            if (fk.key == key) return true;
        }
        for (const auto& v : varied) {
            if (v == key) return true;
        }
        // the two detuning spellings name the same parameter
        const bool detuning = key == "detuning_over_omega_m" || key == "detuning_rad_s";
        if (detuning) {
            for (const auto& fk : fixed) {
                if (fk.key == "detuning_over_omega_m" || fk.key == "detuning_rad_s") return true;
            }
            for (const auto& v : varied) {
                if (v == "detuning_over_omega_m" || v == "detuning_rad_s") return true;
            }
        }
        return false;
    };
    ordered_json inherited = ordered_json::array();
    for (const auto& key : config_keys()) {
        if (!mentions(key)) inherited.push_back(key);
    }
    meta["inherited_keys"] = inherited;
    return meta;
}

std::string axis_config_key(AxisField f) {
    switch (f) {
        case AxisField::delta_s: return "detuning_over_omega_m";
        case AxisField::temperature: return "temperature_k";
        case AxisField::power: return "input_power_w";
        default: return to_string(f);
    }
}

std::string join_path(const std::string& dir, const std::string& file) {
    return (std::filesystem::path(dir) / file).string();
}

// Map presets (fig2a, fig2b): one 2-D sweep.
PresetOutput run_map_preset(const std::string& name, const SweepSpec& spec,
                            const std::vector<FixedKey>& fixed, const std::string& out_dir,
                            const PresetOptions& opt) {
    const SweepResult sweep = run_sweep(spec, opt.workers);

    PresetOutput out;
    out.name = name;

    std::ostringstream csv;
    write_sweep_csv(csv, sweep);
    const std::string csv_path = join_path(out_dir, name + ".csv");
    write_text_file(csv_path, csv.str());
    out.files.push_back(csv_path);

    std::vector<std::string> varied;
    for (const auto& axis : spec.axes) varied.push_back(axis_config_key(axis.field));

    ordered_json doc;
    doc["metadata"] = preset_metadata(name, spec.base, fixed, varied,
                                      sweep.meta.elapsed_seconds, sweep.meta.workers);
    ordered_json payload = ordered_json::parse(sweep_payload_json(sweep));
    doc["axes"] = payload["axes"];
    doc["points"] = payload["points"];
    if (name == "fig2a") {
        const OptimumReport optimum = find_ratio_optimum(sweep);
        ordered_json o;
        o["grid_argmax_ratio"] = optimum.grid_argmax;
        o["refined_argmax_ratio"] = optimum.refined_argmax;
        o["best_e_n"] = optimum.best_e_n;
        doc["optimum"] = o;
        out.summary_json = o.dump(2) + "\n";
    }
    const std::string json_path = join_path(out_dir, name + ".json");
    write_text_file(json_path, doc.dump(2) + "\n");
    out.files.push_back(json_path);

    if (opt.plots) {
        std::ostringstream gp;
        gp << "# gnuplot script for " << name << "\n"
           << "set datafile separator ','\n"
           << "set view map\n"
           << "set xlabel '" << to_string(spec.axes[0].field) << "'\n"
           << "set ylabel '" << to_string(spec.axes[1].field) << "'\n"
           << "set cblabel 'E_N'\n"
           << "splot '" << name << ".csv' every ::1 using 1:2:3 with points pt 5 ps 1 "
           << "palette notitle\n";
        const std::string gp_path = join_path(out_dir, name + ".gp");
        write_text_file(gp_path, gp.str());
        out.files.push_back(gp_path);
    }
    return out;
}

// Family presets (fig3a, fig3b, fig4a): several 1-D sweeps sharing one axis.
PresetOutput run_series_preset(const std::string& name, const std::vector<Series>& series,
                               const SweepAxis& axis, const std::vector<FixedKey>& fixed,
                               std::vector<std::string> varied, const std::string& out_dir,
                               const PresetOptions& opt) {
    PresetOutput out;
    out.name = name;

    std::vector<SweepResult> results;
    double elapsed = 0.0;
    int workers = 1;
    for (const auto& s : series) {
        SweepSpec spec;
        spec.base = s.base;
        spec.axes = {axis};
        results.push_back(run_sweep(spec, opt.workers));
        elapsed += results.back().meta.elapsed_seconds;
        workers = results.back().meta.workers;
    }

    std::ostringstream csv;
    for (std::size_t i = 0; i < series.size(); ++i) {
        write_sweep_csv(csv, results[i], series[i].label, i == 0);
    }
    const std::string csv_path = join_path(out_dir, name + ".csv");
    write_text_file(csv_path, csv.str());
    out.files.push_back(csv_path);

    varied.push_back(axis_config_key(axis.field));

    ordered_json doc;
    doc["metadata"] =
        preset_metadata(name, series.front().base, fixed, varied, elapsed, workers);
    ordered_json series_json = ordered_json::array();
    for (std::size_t i = 0; i < series.size(); ++i) {
        ordered_json s;
        s["label"] = series[i].label;
        ordered_json payload = ordered_json::parse(sweep_payload_json(results[i]));
        s["axes"] = payload["axes"];
        s["points"] = payload["points"];
        series_json.push_back(s);
    }
    doc["series"] = series_json;
    const std::string json_path = join_path(out_dir, name + ".json");
    write_text_file(json_path, doc.dump(2) + "\n");
    out.files.push_back(json_path);

    if (opt.plots) {
        std::ostringstream gp;
        gp << "# gnuplot script for " << name << "\n"
           << "set datafile separator ','\n"
           << "set xlabel '" << to_string(axis.field) << "'\n"
           << "set ylabel 'E_N'\n";
        if (axis.spacing == Spacing::log) gp << "set logscale x\n";
        gp << "plot";
        for (std::size_t i = 0; i < series.size(); ++i) {
            gp << (i == 0 ? " " : ", \\\n     ") << "'" << name
               << ".csv' every ::1 using 2:(strcol(1) eq '" << series[i].label
               << "' ? $3 : 1/0) with lines title '" << series[i].label << "'";
        }
        gp << "\n";
        const std::string gp_path = join_path(out_dir, name + ".gp");
        write_text_file(gp_path, gp.str());
        out.files.push_back(gp_path);
    }
    return out;
}

PresetOutput run_fig4b(const PhysicalParams& base, const std::vector<FixedKey>& fixed,
                       const std::string& out_dir, const PresetOptions& opt) {
    const std::vector<double> qms = {1e3, 1e4, 1e5, 1e6};
    const TcFit fit = tc_vs_qm_fit(qms, base);

    PresetOutput out;
    out.name = "fig4b";

    std::ostringstream csv;
    csv << "record,mech_q,t_c_k,bracket_lo_k,bracket_hi_k,iterations,"
           "slope_k_per_qm,intercept_k,r_squared\n";
    for (const auto& tc : fit.points) {
        csv << "tc," << format_g17(tc.mech_q) << ',' << format_g17(tc.t_c) << ','
            << format_g17(tc.bracket_lo) << ',' << format_g17(tc.bracket_hi) << ','
            << tc.iterations << ",,,\n";
    }
    csv << "fit,,,,,," << format_g17(fit.slope) << ',' << format_g17(fit.intercept) << ','
        << format_g17(fit.r_squared) << "\n";
    const std::string csv_path = join_path(out_dir, "fig4b.csv");
    write_text_file(csv_path, csv.str());
    out.files.push_back(csv_path);

    ordered_json doc;
    doc["metadata"] = preset_metadata("fig4b", base, fixed, {"mech_q", "temperature_k"}, 0.0, 1);
    doc["tc_and_fit"] = ordered_json::parse(tc_fit_to_json(fit));
    const std::string json_path = join_path(out_dir, "fig4b.json");
    write_text_file(json_path, doc.dump(2) + "\n");
    out.files.push_back(json_path);
    out.summary_json = tc_fit_to_json(fit);

    if (opt.plots) {
        std::ostringstream gp;
        gp << "# gnuplot script for fig4b\n"
           << "set datafile separator ','\n"
           << "set logscale xy\n"
           << "set xlabel 'Q_m'\nset ylabel 'T_C [K]'\n"
           << "plot 'fig4b.csv' every ::1 using 2:3 with points pt 7 title 'T_C', \\\n"
           << "     " << format_g17(fit.slope) << "*x + " << format_g17(fit.intercept)
           << " with lines title 'linear fit'\n";
        const std::string gp_path = join_path(out_dir, "fig4b.gp");
        write_text_file(gp_path, gp.str());
        out.files.push_back(gp_path);
    }
    return out;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b"};
}

PresetOutput run_preset(const std::string& name, const PhysicalParams& base,
                        const std::string& out_dir, const PresetOptions& opt) {
    bool known = false;
    for (const auto& n : preset_names()) known = known || n == name;
    if (!known) {
        std::string names;
        for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
        throw UsageError("unknown preset '" + name + "' (valid: " + names + ")");
    }

    std::filesystem::create_directories(out_dir);

    if (name == "fig2a") {
        SweepSpec spec;
        spec.base = base;
        spec.base.temperature = 0.05;
        spec.base.power = 0.1;
        spec.axes = {{AxisField::delta_s, -1.0, 3.0, 51, Spacing::linear},
                     {AxisField::coupling_ratio, 0.05, 1.0, 40, Spacing::linear}};
        return run_map_preset(name, spec,
                              {{"temperature_k", "0.05"}, {"input_power_w", "0.1"}}, out_dir,
                              opt);
    }
    if (name == "fig2b") {
        SweepSpec spec;
        spec.base = base;
        spec.base.coupling_ratio = 0.3;
        spec.base.power = 0.1;
        spec.axes = {{AxisField::delta_s, -1.0, 3.0, 51, Spacing::linear},
                     {AxisField::temperature, 0.01, 500.0, 40, Spacing::log}};
        return run_map_preset(name, spec,
                              {{"coupling_ratio", "0.3"}, {"input_power_w", "0.1"}}, out_dir,
                              opt);
    }

    PhysicalParams fig3_base = base;
    fig3_base.power = 0.1;
    fig3_base.temperature = 0.05;
    fig3_base.coupling_ratio = 0.3;
    const std::vector<FixedKey> fig3_fixed = {{"input_power_w", "0.1"},
                                              {"temperature_k", "0.05"},
                                              {"coupling_ratio", "0.3"}};

    if (name == "fig3a") {
        std::vector<Series> series;
        for (const auto& [label, dc, rc] :
             std::initializer_list<std::tuple<const char*, double, double>>{
                 {"dc_rc", 1.0, 1.0}, {"dc_only", 1.0, 0.0}, {"rc_only", 0.0, 1.0}}) {
            PhysicalParams p = fig3_base;
            p.dc_scale = dc;
            p.rc_scale = rc;
            series.push_back({label, p});
        }
        return run_series_preset(name, series,
                                 {AxisField::delta_s, 1.0, 3.0, 81, Spacing::linear}, fig3_fixed,
                                 {"dc_scale", "rc_scale"}, out_dir, opt);
    }
    if (name == "fig3b") {
        std::vector<Series> series;
        for (double rc : {20.0, 40.0, 60.0}) {
            PhysicalParams p = fig3_base;
            p.dc_scale = 0.0;
            p.rc_scale = rc;
            series.push_back({"rc" + std::to_string(static_cast<int>(rc)), p});
        }
        std::vector<FixedKey> fig3b_fixed = fig3_fixed;
        fig3b_fixed.push_back({"dc_scale", "0"});
        return run_series_preset(name, series,
                                 {AxisField::delta_s, 0.0, 6.0, 121, Spacing::linear},
                                 fig3b_fixed, {"rc_scale"}, out_dir, opt);
    }

    PhysicalParams fig4_base = base;
    fig4_base.power = 0.1;
    fig4_base.coupling_ratio = 0.3;
    fig4_base.detuning_s = 1.8 * fig4_base.omega_m;
    const std::vector<FixedKey> fig4_fixed = {{"input_power_w", "0.1"},
                                              {"coupling_ratio", "0.3"},
                                              {"detuning_over_omega_m", "1.8"}};

    if (name == "fig4a") {
        std::vector<Series> series;
        for (double qm : {1e3, 1e4, 1e5, 1e6}) {
            PhysicalParams p = fig4_base;
            p.mech_q = qm;
            std::ostringstream label;
            label << "qm1e" << std::lround(std::log10(qm));
            series.push_back({label.str(), p});
        }
        return run_series_preset(name, series,
                                 {AxisField::temperature, 1e-3, 1e3, 60, Spacing::log},
                                 fig4_fixed, {"mech_q"}, out_dir, opt);
    }
    return run_fig4b(fig4_base, fig4_fixed, out_dir, opt);
}

}  // namespace omsim
