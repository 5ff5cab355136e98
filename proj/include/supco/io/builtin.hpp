#pragma once

#include <map>
#include <string>

#include "supco/errors.hpp"

namespace supco::io {

// SNAIL-array Kerr-cat circuits A-D and the beam-splitter setup.
inline const std::map<std::string, std::string>& builtin_configs() {
    static const std::map<std::string, std::string> c = {
        {"kerr-cat-configA", R"(schema: supco-config/v1
task: kerrcat
circuit:
  family: SnailArrayStrayL
  M: 1
  N: 3
  alpha: 0.11
  phi_e_flux: 0.32
  x_J: 100
  L_J_nH: 0.8
  C_pF: 0.32
drive:
  Pi_tilde: 0.0
numerics:
  S_max: 13
  pi_tilde_max: 1.5
)"},
        {"kerr-cat-configB", R"(schema: supco-config/v1
task: kerrcat
circuit:
  family: SnailArrayStrayL
  M: 2
  N: 3
  alpha: 0.11
  phi_e_flux: 0.46
  x_J: 1
  L_J_nH: 0.6
  C_pF: 0.16
drive:
  Pi_tilde: 0.0
numerics:
  S_max: 13
  pi_tilde_max: 3.0
)"},
        {"kerr-cat-configC", R"(schema: supco-config/v1
task: kerrcat
circuit:
  family: SnailArrayStrayL
  M: 1
  N: 3
  alpha: 0.05
  phi_e_flux: 0.34
  x_J: 10
  L_J_nH: 0.35
  C_pF: 0.62
drive:
  Pi_tilde: 0.0
numerics:
  S_max: 13
  pi_tilde_max: 2.9
)"},
        {"kerr-cat-configD", R"(schema: supco-config/v1
task: kerrcat
circuit:
  family: SnailArrayStrayL
  M: 2
  N: 3
  alpha: 0.0739
  phi_e_flux: 0.25
  x_J: 0.27
  L_J_nH: 0.39
  C_pF: 0.17
drive:
  Pi_tilde: 0.0
numerics:
  S_max: 13
  pi_tilde_max: 5.3
)"},
        {"beam-splitter", R"(schema: supco-config/v1
task: beamsplitter
circuit:
  family: SnailArray
  M: 2
  N: 2
  alpha: 0.25
  phi_e_flux: 0.36
  E_J_GHz: 86
  E_C_GHz: 0.177
drive:
  Pi: 1.0
  omega_b_GHz: 2.976
  omega_c_GHz: 6.915
  g_b_MHz: 75.6
  g_c_MHz: 134.9
numerics:
  S_max: 13
)"},
        {"sweep-kerr-cat", R"(schema: supco-config/v1
task: sweep
circuit:
  family: SnailArrayStrayL
  M: 1
  N: 3
  alpha: 0.1
  phi_e_flux: 0.3
  x_J: 10
  L_J_nH: 0.391
  C_pF: 0.172
drive:
  Pi: 0.5
numerics:
  S_max: 8
sweep:
  target: kerrcat
  axes:
    x_J: [1, 10, 100]
    phi_e_flux: {start: 0.0, stop: 0.5, points: 401}
  constraints:
    - {quantity: K_MHz, op: ">=", value: 1.0}
)"},
        {"sweep-beam-splitter", R"(schema: supco-config/v1
task: sweep
circuit:
  family: SquidArray
  M: 1
  alpha: 0.95
  r_a: 0.5
  phi_dc_flux: 0.2
  E_J_GHz: 86
  E_C_GHz: 0.177
drive:
  Pi: 1.0
  omega_b_GHz: 2.976
  omega_c_GHz: 6.915
  g_b_MHz: 75.6
  g_c_MHz: 134.9
numerics:
  S_max: 9
sweep:
  target: beamsplitter
  axes:
    M: [1, 2, 3]
    phi_dc_flux: {start: 0.05, stop: 0.45, points: 41}
  constraints:
    - {quantity: chi_bc_Hz, op: ">=", value: 30}
    - {quantity: omega_a_GHz, op: ">=", value: 4.5}
    - {quantity: omega_a_GHz, op: "<=", value: 6.0}
)"},
    };
    return c;
}

inline const std::string& builtin_config(const std::string& name) {
    const auto& c = builtin_configs();
    auto it = c.find(name);
    if (it == c.end()) throw Error(ErrorCode::ConfigError, "unknown example '" + name + "'");
    return it->second;
}

}  // namespace supco::io
