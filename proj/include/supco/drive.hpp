#pragma once

#include <cmath>
#include <utility>

#include "supco/circuit.hpp"
#include "supco/errors.hpp"
#include "supco/units.hpp"

namespace supco {

struct CapacitiveDrive {
    double Omega = 0;    // rad/ns
    double omega_d = 0;  // rad/ns
    double theta = 0;
};

struct FluxDrive {
    double phi_ac0 = 0;
    double omega_d = 0;
    double gamma = 0;
};

struct EffectiveDrive {
    double pi_tilde = 0;
    double gamma = 0;
};

inline void require_off_resonance(double omega_d, double omega0) {
    if (std::fabs(omega_d * omega_d - omega0 * omega0) < 1e-9 * omega0 * omega0)
        throw Error(ErrorCode::OnResonance, "drive frequency coincides with the mode frequency");
}

inline EffectiveDrive capacitive_effective(const CapacitiveDrive& d, double omega0) {
    require_off_resonance(d.omega_d, omega0);
    return {d.Omega * d.omega_d / (d.omega_d * d.omega_d - omega0 * omega0), d.theta - units::pi / 2};
}

inline double pi_tilde_from_pi(const ModeFrame& f, double Pi) { return 2.0 * f.phi_zpf * Pi; }
inline double pi_from_pi_tilde(const ModeFrame& f, double pi_tilde) { return f.n_zpf * pi_tilde; }

// Flux coupling ratios a2/a1 and b2/b1 of the two cosine groups.
inline std::pair<double, double> flux_ratios(const CircuitModel& model) {
    return std::visit([](const auto& v) -> std::pair<double, double> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, TwoCosine> || std::is_same_v<T, HigherHarmonics>) {
            return {v.a1 != 0.0 ? v.a2 / v.a1 : 0.0, v.b1 != 0.0 ? v.b2 / v.b1 : 0.0};
        } else if constexpr (std::is_same_v<T, SnailArray>) {
            return {0.0, -static_cast<double>(v.M)};
        } else if constexpr (std::is_same_v<T, SquidArray>) {
            return {-v.ra * v.M, v.rb * v.M};
        } else {
            throw Error(ErrorCode::UnsupportedModel, "flux drive needs a cosine-sum potential");
        }
    }, model);
}

struct FluxAmplitudes {
    double pi_a = 0, pi_b = 0;
    double X_a = 0, X_b = 0;  // linear-response correction factors
};

inline FluxAmplitudes flux_drive_amplitudes(const CircuitModel& model, const ModeFrame& f, double phi_ac0, double omega_d) {
    require_off_resonance(omega_d, f.omega0);
    if (f.c_group.size() != 2) throw Error(ErrorCode::UnsupportedModel, "flux drive needs a two-group potential");
    const auto [ra, rb] = flux_ratios(model);
    const double den = 2.0 * (omega_d * omega_d - f.omega0 * f.omega0);
    FluxAmplitudes out;
    out.X_a = f.EJ * f.c_group[0][2] * f.phi_zpf * f.phi_zpf * f.omega0 / den;
    out.X_b = f.EJ * f.c_group[1][2] * f.phi_zpf * f.phi_zpf * f.omega0 / den;
    out.pi_a = 2.0 * phi_ac0 * (ra * (1.0 - out.X_a) - rb * out.X_b);
    out.pi_b = 2.0 * phi_ac0 * (rb * (1.0 - out.X_b) - ra * out.X_a);
    return out;
}

// Upper bound on the correction factor for positive group curvatures.
inline double flux_correction_bound(double omega_d, double omega0) {
    const double r = omega_d / omega0;
    return 1.0 / (4.0 * (r * r - 1.0));
}

}  // namespace supco
