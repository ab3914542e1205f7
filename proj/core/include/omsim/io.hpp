#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "omsim/sweep.hpp"

namespace omsim {

// 17 significant digits: lossless text round-trip for doubles.
std::string format_g17(double x);

// Flat JSON record for one pipeline outcome: scalars, the 10 unique V
// entries and the stability diagnostics.
std::string point_to_json(const PointResult& point, int indent = 2);

// CSV, one row per grid point: axis values, e_n, status, q_s, x_s, nu_minus,
// lyap_residual. Cells whose quantity is undefined at that point are empty.
// series, when present, is prepended as the first column.
void write_sweep_csv(std::ostream& os, const SweepResult& sweep,
                     const std::optional<std::string>& series = std::nullopt,
                     bool header = true);

// JSON document {"metadata": ..., "axes": ..., "points": [...]}. The
// metadata carries timing and is the only part that varies between reruns.
std::string sweep_to_json(const SweepResult& sweep, int indent = 2);

// The "points" subtree alone; byte-comparable across reruns.
std::string sweep_payload_json(const SweepResult& sweep, int indent = 2);

std::string tc_result_to_json(const TcResult& tc, int indent = 2);
std::string tc_fit_to_json(const TcFit& fit, int indent = 2);
std::string collapse_to_json(const CollapseResult& c, int indent = 2);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace omsim
