#pragma once

#include <numbers>

namespace supco::units {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline constexpr double planck_h = 6.62607015e-34;
inline constexpr double electron_charge = 1.602176634e-19;
inline constexpr double hbar = planck_h / two_pi;

// Internal energies and frequencies are angular, in rad/ns (hbar = 1).
inline constexpr double from_ghz(double f_ghz) { return two_pi * f_ghz; }
inline constexpr double to_ghz(double w) { return w / two_pi; }
inline constexpr double to_mhz(double w) { return 1e3 * w / two_pi; }
inline constexpr double to_hz(double w) { return 1e9 * w / two_pi; }

// E_J/h in GHz for a junction of inductance L_J given in nH.
inline constexpr double ej_ghz_from_lj_nh(double lj_nh) {
    const double phi0_red = hbar / (2.0 * electron_charge);
    return phi0_red * phi0_red / (lj_nh * 1e-9) / planck_h * 1e-9;
}

// E_C/h in GHz for a shunt capacitance given in pF.
inline constexpr double ec_ghz_from_c_pf(double c_pf) {
    return electron_charge * electron_charge / (2.0 * c_pf * 1e-12) / planck_h * 1e-9;
}

// Flux given as a fraction of the flux quantum -> phase in radians.
inline constexpr double flux_to_phase(double phi_over_phi0) { return two_pi * phi_over_phi0; }
inline constexpr double phase_to_flux(double phase) { return phase / two_pi; }

}  // namespace supco::units
