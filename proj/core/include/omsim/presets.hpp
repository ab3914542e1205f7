#pragma once

#include <string>
#include <vector>

#include "omsim/params.hpp"

namespace omsim {

// Figure-family recipes. Each preset fixes the parameters its caption pins
// and inherits everything else from the supplied base set.
//   fig2a: (Delta_s x kappa1/kappa0) map at T = 0.05 K
//   fig2b: (Delta_s x T) map at kappa1/kappa0 = 0.3
//   fig3a: Delta_s cuts for {DC+RC, DC only, RC only}
//   fig3b: Delta_s cuts for rc_scale in {20, 40, 60}, dc_scale = 0
//   fig4a: E_N vs T for Q_m in {1e3, 1e4, 1e5, 1e6}
//   fig4b: T_c vs Q_m with a linear fit
std::vector<std::string> preset_names();

struct PresetOptions {
    int workers = 0;
    bool plots = false;  // also emit a gnuplot-dialect script
};

struct PresetOutput {
    std::string name;
    std::vector<std::string> files;  // paths written (csv, json, optional gp)
    std::string summary_json;        // preset-specific summary (fit, optimum, ...)
};

PresetOutput run_preset(const std::string& name, const PhysicalParams& base,
                        const std::string& out_dir, const PresetOptions& opt = {});

}  // namespace omsim
