#pragma once

#include <string>
#include <vector>

#include "omsim/params.hpp"

namespace omsim {

// Nominal parameter set: lambda = 850 nm, Q_o = 4e6, omega_m = 2pi 15 MHz,
// Q_m = 1e6, m = 2 pg, P = 100 mW, l0 = 100 nm, d = 2pi 50 MHz/nm,
// kappa1/kappa0 = 0.3, Delta_s = 1.8 omega_m, T = 0.05 K.
PhysicalParams default_params();

// Flat key=value config, one key per line, '#' comments. Frequency-like keys
// (mech_freq_hz, disp_coupling_hz_per_m) hold ordinary frequencies and are
// multiplied by 2 pi unless angular_quotes=true. Unknown keys are an error.
// Missing keys fall back to the defaults. overrides are extra "key=value"
// entries applied after the file, last one wins.
PhysicalParams parse_config(const std::string& text,
                            const std::vector<std::string>& overrides = {});

PhysicalParams parse_config_file(const std::string& path,
                                 const std::vector<std::string>& overrides = {});

// Lossless canonical form: emits angular_quotes=true with frequencies in
// rad/s so that parse(serialize(p)) == p bit for bit.
std::string serialize_config(const PhysicalParams& p);

// Hex FNV-1a hash of the canonical serialized config.
std::string config_hash(const PhysicalParams& p);

// Every key parse_config understands, in canonical order.
const std::vector<std::string>& config_keys();

}  // namespace omsim
