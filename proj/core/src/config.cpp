#include "omsim/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "omsim/errors.hpp"
#include "omsim/sweep.hpp"

namespace omsim {

namespace {

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "wavelength_m",      "optical_q",
        "mech_freq_hz",      "mech_q",
        "eff_mass_kg",       "input_power_w",
        "coupling_ratio",    "disp_coupling_hz_per_m",
        "decay_length_m",    "detuning_over_omega_m",
        "detuning_rad_s",    "temperature_k",
        "rc_scale",          "dc_scale",
        "drop_gamma_in_drift", "diffusion_xs_power",
        "angular_quotes",
    };
    return keys;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

struct Entry {
    std::string value;
    std::string where;  // "line N" or "override N", for error messages
};

double parse_number(const Entry& e, const std::string& key) {
    const std::string v = trim(e.value);
    if (v.empty()) {
        throw ParseError("empty value for " + key + " (" + e.where + ")");
    }
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size()) {
        throw ParseError("bad number '" + v + "' for " + key + " (" + e.where + ")");
    }
    return x;
}

bool parse_bool(const Entry& e, const std::string& key) {
    const std::string v = trim(e.value);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ParseError("bad boolean '" + v + "' for " + key + " (" + e.where + ")");
}

// key=value lines to a last-wins map; '#' starts a comment anywhere.
void collect(const std::string& text, std::map<std::string, Entry>& entries,
             std::vector<std::string>& order) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ParseError("line " + std::to_string(lineno) + ": expected key=value, got '" +
                             stripped + "'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        if (key.empty()) {
            throw ParseError("line " + std::to_string(lineno) + ": empty key");
        }
        if (entries.find(key) == entries.end()) order.push_back(key);
        entries[key] = Entry{trim(stripped.substr(eq + 1)), "line " + std::to_string(lineno)};
    }
}

PhysicalParams build(std::map<std::string, Entry> entries) {
    std::string unknown;
    for (const auto& [key, entry] : entries) {
        bool known = false;
        for (const auto& k : known_keys()) {
            if (k == key) {
                known = true;
                break;
            }
        }
        if (!known) unknown += (unknown.empty() ? "" : ", ") + key;
    }
    if (!unknown.empty()) {
        throw ParseError("unknown config keys: " + unknown);
    }

    const auto take = [&](const char* key) -> const Entry* {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };

    PhysicalParams p;  // nominal defaults
    bool angular = false;
    if (const Entry* e = take("angular_quotes")) angular = parse_bool(*e, "angular_quotes");
    const double quote_factor = angular ? 1.0 : two_pi;

    if (const Entry* e = take("wavelength_m")) p.wavelength = parse_number(*e, "wavelength_m");
    if (const Entry* e = take("optical_q")) p.optical_q = parse_number(*e, "optical_q");
    if (const Entry* e = take("mech_freq_hz"))
        p.omega_m = parse_number(*e, "mech_freq_hz") * quote_factor;
    if (const Entry* e = take("mech_q")) p.mech_q = parse_number(*e, "mech_q");
    if (const Entry* e = take("eff_mass_kg")) p.mass = parse_number(*e, "eff_mass_kg");
    if (const Entry* e = take("input_power_w")) p.power = parse_number(*e, "input_power_w");
    if (const Entry* e = take("coupling_ratio"))
        p.coupling_ratio = parse_number(*e, "coupling_ratio");
    if (const Entry* e = take("disp_coupling_hz_per_m"))
        p.disp_coupling = parse_number(*e, "disp_coupling_hz_per_m") * quote_factor;
    if (const Entry* e = take("decay_length_m"))
        p.decay_length = parse_number(*e, "decay_length_m");
    if (const Entry* e = take("temperature_k")) p.temperature = parse_number(*e, "temperature_k");
    if (const Entry* e = take("rc_scale")) p.rc_scale = parse_number(*e, "rc_scale");
    if (const Entry* e = take("dc_scale")) p.dc_scale = parse_number(*e, "dc_scale");
    if (const Entry* e = take("drop_gamma_in_drift"))
        p.drop_gamma_in_drift = parse_bool(*e, "drop_gamma_in_drift");
    if (const Entry* e = take("diffusion_xs_power")) {
        const std::string v = trim(e->value);
        if (v == "linear") {
            p.xs_power = XsPower::linear;
        } else if (v == "squared") {
            p.xs_power = XsPower::squared;
        } else {
            throw ValidationError("diffusion_xs_power must be 'linear' or 'squared', got '" +
                                  v + "'");
        }
    }

    const Entry* rel = take("detuning_over_omega_m");
    const Entry* abs = take("detuning_rad_s");
    if (rel && abs) {
        throw ValidationError(
            "specify only one of detuning_over_omega_m and detuning_rad_s");
    }
    if (rel) p.detuning_s = parse_number(*rel, "detuning_over_omega_m") * p.omega_m;
    if (abs) p.detuning_s = parse_number(*abs, "detuning_rad_s");

    validate(p);
    return p;
}

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

PhysicalParams default_params() { return PhysicalParams{}; }

PhysicalParams parse_config(const std::string& text, const std::vector<std::string>& overrides) {
    std::map<std::string, Entry> entries;
    std::vector<std::string> order;
    collect(text, entries, order);
    int n = 0;
    for (const auto& ov : overrides) {
        ++n;
        const std::size_t eq = ov.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ParseError("override " + std::to_string(n) + ": expected KEY=VALUE, got '" +
                             ov + "'");
        }
        entries[trim(ov.substr(0, eq))] =
            Entry{trim(ov.substr(eq + 1)), "override " + std::to_string(n)};
    }
    return build(std::move(entries));
}

PhysicalParams parse_config_file(const std::string& path,
                                 const std::vector<std::string>& overrides) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), overrides);
}

std::string serialize_config(const PhysicalParams& p) {
    std::ostringstream out;
    out << "# canonical parameter set; frequencies in rad/s (angular_quotes)\n";
    out << "angular_quotes = true\n";
    out << "wavelength_m = " << g17(p.wavelength) << "\n";
    out << "optical_q = " << g17(p.optical_q) << "\n";
    out << "mech_freq_hz = " << g17(p.omega_m) << "\n";
    out << "mech_q = " << g17(p.mech_q) << "\n";
    out << "eff_mass_kg = " << g17(p.mass) << "\n";
    out << "input_power_w = " << g17(p.power) << "\n";
    out << "coupling_ratio = " << g17(p.coupling_ratio) << "\n";
    out << "disp_coupling_hz_per_m = " << g17(p.disp_coupling) << "\n";
    out << "decay_length_m = " << g17(p.decay_length) << "\n";
    out << "detuning_rad_s = " << g17(p.detuning_s) << "\n";
    out << "temperature_k = " << g17(p.temperature) << "\n";
    out << "rc_scale = " << g17(p.rc_scale) << "\n";
    out << "dc_scale = " << g17(p.dc_scale) << "\n";
    out << "drop_gamma_in_drift = " << (p.drop_gamma_in_drift ? "true" : "false") << "\n";
    out << "diffusion_xs_power = " << (p.xs_power == XsPower::linear ? "linear" : "squared")
        << "\n";
    return out.str();
}

const std::vector<std::string>& config_keys() { return known_keys(); }

std::string config_hash(const PhysicalParams& p) {
    std::ostringstream hex;
    hex << std::hex << fnv1a_hash(serialize_config(p));
    return hex.str();
}

}  // namespace omsim
