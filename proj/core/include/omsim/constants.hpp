#pragma once

namespace omsim {

// Fundamental constants, SI (2019 redefinition; hbar from CODATA 2018).
struct PhysicsConstants {
    double c;     // speed of light [m/s]
    double hbar;  // reduced Planck constant [J s]
    double k_b;   // Boltzmann constant [J/K]
};

constexpr PhysicsConstants si_constants() {
    return {299792458.0, 1.054571817e-34, 1.380649e-23};
}

inline constexpr double two_pi = 6.283185307179586476925286766559;

}  // namespace omsim
