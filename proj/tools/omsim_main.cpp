// Command-line front end: single-point evaluation, parameter sweeps, critical
// temperature, T/Q_m collapse check and figure presets.
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "omsim/config.hpp"
#include "omsim/entanglement.hpp"
#include "omsim/errors.hpp"
#include "omsim/io.hpp"
#include "omsim/presets.hpp"
#include "omsim/sweep.hpp"
#include "omsim/version.hpp"

namespace {

omsim::SweepAxis parse_axis_spec(const std::string& spec) {
    std::vector<std::string> parts;
    std::istringstream in(spec);
    std::string part;
    while (std::getline(in, part, ':')) parts.push_back(part);
    if (parts.size() < 4 || parts.size() > 5) {
        throw omsim::UsageError("axis spec must be FIELD:MIN:MAX:COUNT[:linear|log], got '" +
                                spec + "'");
    }
    omsim::SweepAxis axis;
    axis.field = omsim::axis_field_from_string(parts[0]);
    try {
        axis.min = std::stod(parts[1]);
        axis.max = std::stod(parts[2]);
        axis.count = std::stoi(parts[3]);
    } catch (const std::exception&) {
        throw omsim::UsageError("bad numbers in axis spec '" + spec + "'");
    }
    if (parts.size() == 5) {
        if (parts[4] == "log") {
            axis.spacing = omsim::Spacing::log;
        } else if (parts[4] == "linear") {
            axis.spacing = omsim::Spacing::linear;
        } else {
            throw omsim::UsageError("axis spacing must be 'linear' or 'log', got '" + parts[4] +
                                    "'");
        }
    }
    return axis;
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        omsim::write_text_file(out_path, content);
    }
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> values;
    std::istringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw omsim::UsageError("bad number '" + item + "' in list");
        }
    }
    return values;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady-state optomechanical entanglement simulator"};
    app.set_version_flag("--version", omsim::version_string);
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_path;
    std::string format = "";
    int workers = 0;
    bool plots = false;
    app.add_option("--config", config_path, "parameter file (key=value lines)")
        ->envname("OMSIM_CONFIG");
    app.add_option("--set", overrides, "override KEY=VALUE (repeatable, last wins)");
    app.add_option("--out", out_path, "output file or directory (presets)");
    app.add_option("--format", format, "output format: csv or json");
    app.add_option("--workers", workers, "worker threads (default: OMSIM_WORKERS or all cores)");
    app.add_flag("--plots", plots, "also emit gnuplot scripts (presets)");
    app.fallthrough();

    auto* cmd_point = app.add_subcommand("point", "evaluate one parameter point");
    auto* cmd_sweep = app.add_subcommand("sweep", "evaluate a 1-D or 2-D parameter grid");
    std::string axis1_spec, axis2_spec;
    cmd_sweep->add_option("--axis", axis1_spec, "FIELD:MIN:MAX:COUNT[:linear|log]")->required();
    cmd_sweep->add_option("--axis2", axis2_spec, "second axis (optional)");
    auto* cmd_tc = app.add_subcommand("tc", "bisect the critical temperature");
    double t_lo = 1e-3, t_hi = 0.0;
    cmd_tc->add_option("--tlo", t_lo, "lower bracket [K] (default 1e-3)");
    cmd_tc->add_option("--thi", t_hi, "upper bracket [K] (default: auto-expand)");
    auto* cmd_collapse = app.add_subcommand("collapse", "T/Q_m collapse spread check");
    std::string alphas_csv = "0.5,1,2,5";
    cmd_collapse->add_option("--alphas", alphas_csv, "comma list of scale factors");
    auto* cmd_preset = app.add_subcommand("preset", "run a figure preset");
    std::string preset_name;
    cmd_preset->add_option("name", preset_name, "fig2a|fig2b|fig3a|fig3b|fig4a|fig4b")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help, --version
        app.exit(e);
        return static_cast<int>(omsim::ErrorClass::usage);
    }

    try {
        omsim::PhysicalParams params = config_path.empty()
                                           ? omsim::parse_config("", overrides)
                                           : omsim::parse_config_file(config_path, overrides);

        if (*cmd_point) {
            const omsim::PointResult result = omsim::entanglement_at(params);
            emit(omsim::point_to_json(result), out_path);
            return 0;
        }

        if (*cmd_sweep) {
            omsim::SweepSpec spec;
            spec.base = params;
            spec.axes.push_back(parse_axis_spec(axis1_spec));
            if (!axis2_spec.empty()) spec.axes.push_back(parse_axis_spec(axis2_spec));
            const omsim::SweepResult sweep = omsim::run_sweep(spec, workers);
            if (format.empty() || format == "csv") {
                std::ostringstream csv;
                omsim::write_sweep_csv(csv, sweep);
                emit(csv.str(), out_path);
            } else if (format == "json") {
                emit(omsim::sweep_to_json(sweep), out_path);
            } else {
                throw omsim::UsageError("--format must be csv or json, got '" + format + "'");
            }
            return 0;
        }

        if (*cmd_tc) {
            const omsim::TcResult tc = t_hi > 0.0
                                           ? omsim::critical_temperature(params, t_lo, t_hi)
                                           : omsim::auto_critical_temperature(params, t_lo);
            emit(omsim::tc_result_to_json(tc), out_path);
            return 0;
        }

        if (*cmd_collapse) {
            const omsim::CollapseResult c =
                omsim::tq_collapse_check(params, parse_double_list(alphas_csv));
            emit(omsim::collapse_to_json(c), out_path);
            return 0;
        }

        // preset
        omsim::PresetOptions opt;
        opt.workers = workers;
        opt.plots = plots;
        const std::string dir = out_path.empty() ? "." : out_path;
        const omsim::PresetOutput result = omsim::run_preset(preset_name, params, dir, opt);
        std::cout << "preset " << result.name << " wrote:\n";
        for (const auto& f : result.files) std::cout << "  " << f << "\n";
        if (!result.summary_json.empty()) std::cout << result.summary_json;
        return 0;
    } catch (const omsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(omsim::ErrorClass::numerical);
    }
}
