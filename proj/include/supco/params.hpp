#pragma once

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "supco/circuit.hpp"
#include "supco/errors.hpp"
#include "supco/units.hpp"

namespace supco {

using Value = std::variant<double, bool, std::string, std::vector<double>>;
using Params = std::map<std::string, Value>;

inline bool has(const Params& p, const std::string& key) { return p.count(key) != 0; }

inline double num(const Params& p, const std::string& key, const std::string& where = "") {
    auto it = p.find(key);
    if (it == p.end()) throw Error(ErrorCode::ConfigError, where + key + ": missing required value");
    if (auto d = std::get_if<double>(&it->second)) return *d;
    throw Error(ErrorCode::ConfigError, where + key + ": expected a number");
}

inline double num_or(const Params& p, const std::string& key, double fallback) {
    return has(p, key) ? num(p, key) : fallback;
}

inline std::string str(const Params& p, const std::string& key, const std::string& where = "") {
    auto it = p.find(key);
    if (it == p.end()) throw Error(ErrorCode::ConfigError, where + key + ": missing required value");
    if (auto s = std::get_if<std::string>(&it->second)) return *s;
    throw Error(ErrorCode::ConfigError, where + key + ": expected a string");
}

inline std::vector<double> list(const Params& p, const std::string& key, const std::string& where = "") {
    auto it = p.find(key);
    if (it == p.end()) return {};
    if (auto v = std::get_if<std::vector<double>>(&it->second)) return *v;
    if (auto d = std::get_if<double>(&it->second)) return {*d};
    throw Error(ErrorCode::ConfigError, where + key + ": expected a list of numbers");
}

inline int integer(const Params& p, const std::string& key, const std::string& where = "") {
    const double v = num(p, key, where);
    if (v != std::floor(v)) throw Error(ErrorCode::ConfigError, where + key + ": expected an integer");
    return static_cast<int>(v);
}

// Keys accepted in a [circuit] section, per family.
inline const std::set<std::string>& circuit_keys(const std::string& family) {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"TwoCosine", {"family", "A_GHz", "B_GHz", "a1", "b1", "a2", "b2", "phi_e_flux", "E_J_GHz", "L_J_nH", "E_C_GHz", "C_pF"}},
        {"SnailArray", {"family", "M", "N", "alpha", "phi_e_flux", "E_J_GHz", "L_J_nH", "E_C_GHz", "C_pF"}},
        {"SnailArrayStrayL", {"family", "M", "N", "alpha", "phi_e_flux", "x_J", "E_J_GHz", "L_J_nH", "E_C_GHz", "C_pF"}},
        {"SquidArray", {"family", "M", "alpha", "r_a", "r_b", "phi_dc_flux", "E_J_GHz", "L_J_nH", "E_C_GHz", "C_pF"}},
        {"HigherHarmonics", {"family", "A_GHz", "B_GHz", "a1", "b1", "a2", "b2", "phi_e_flux", "E_J_GHz", "E_C_GHz", "C_pF"}},
    };
    auto it = keys.find(family);
    if (it == keys.end()) throw Error(ErrorCode::ConfigError, "circuit.family: unknown family '" + family + "'");
    return it->second;
}

struct CircuitDef {
    std::string family;
    CircuitModel model;
    double EC = 0;  // rad/ns
};

namespace detail {

inline double energy_ej(const Params& p, bool required) {
    if (has(p, "E_J_GHz") && has(p, "L_J_nH")) throw Error(ErrorCode::ConfigError, "circuit: give either E_J_GHz or L_J_nH, not both");
    if (has(p, "E_J_GHz")) return units::from_ghz(num(p, "E_J_GHz", "circuit."));
    if (has(p, "L_J_nH")) return units::from_ghz(units::ej_ghz_from_lj_nh(num(p, "L_J_nH", "circuit.")));
    if (required) throw Error(ErrorCode::ConfigError, "circuit.E_J_GHz: missing (or give L_J_nH)");
    return 0.0;
}

inline double energy_ec(const Params& p) {
    if (has(p, "E_C_GHz") && has(p, "C_pF")) throw Error(ErrorCode::ConfigError, "circuit: give either E_C_GHz or C_pF, not both");
    if (has(p, "E_C_GHz")) return units::from_ghz(num(p, "E_C_GHz", "circuit."));
    if (has(p, "C_pF")) return units::from_ghz(units::ec_ghz_from_c_pf(num(p, "C_pF", "circuit.")));
    throw Error(ErrorCode::ConfigError, "circuit.E_C_GHz: missing (or give C_pF)");
}

}  // namespace detail

inline CircuitDef build_circuit(const Params& p) {
    CircuitDef d;
    d.family = str(p, "family", "circuit.");
    const auto& allowed = circuit_keys(d.family);
    for (const auto& [k, v] : p)
        if (!allowed.count(k)) throw Error(ErrorCode::ConfigError, "circuit." + k + ": not valid for family " + d.family);
    const std::string w = "circuit.";
    d.EC = detail::energy_ec(p);
    if (d.family == "TwoCosine") {
        TwoCosine m;
        m.A = units::from_ghz(num_or(p, "A_GHz", 0.0));
        m.B = units::from_ghz(num_or(p, "B_GHz", 0.0));
        m.a1 = num_or(p, "a1", 1.0);
        m.b1 = num_or(p, "b1", 0.0);
        m.a2 = num_or(p, "a2", 0.0);
        m.b2 = num_or(p, "b2", 0.0);
        m.phi_e = units::flux_to_phase(num_or(p, "phi_e_flux", 0.0));
        m.EJ = detail::energy_ej(p, false);
        d.model = m;
    } else if (d.family == "SnailArray" || d.family == "SnailArrayStrayL") {
        const int M = integer(p, "M", w), N = integer(p, "N", w);
        const double alpha = num(p, "alpha", w);
        const double EJ = detail::energy_ej(p, true);
        const double phe = units::flux_to_phase(num(p, "phi_e_flux", w));
        if (d.family == "SnailArray") d.model = SnailArray{M, N, alpha, EJ, phe};
        else d.model = SnailArrayStrayL{M, N, alpha, EJ, phe, num(p, "x_J", w)};
    } else if (d.family == "SquidArray") {
        SquidArray m;
        m.M = integer(p, "M", w);
        m.alpha = num(p, "alpha", w);
        m.EJ = detail::energy_ej(p, true);
        m.ra = num_or(p, "r_a", 0.5);
        m.rb = num_or(p, "r_b", 1.0 - m.ra);
        m.phi_dc = units::flux_to_phase(num(p, "phi_dc_flux", w));
        d.model = m;
    } else {
        HigherHarmonics m;
        for (double a : list(p, "A_GHz", w)) m.A.push_back(units::from_ghz(a));
        for (double b : list(p, "B_GHz", w)) m.B.push_back(units::from_ghz(b));
        m.a1 = num_or(p, "a1", 1.0);
        m.b1 = num_or(p, "b1", 0.0);
        m.a2 = num_or(p, "a2", 0.0);
        m.b2 = num_or(p, "b2", 0.0);
        m.phi_e = units::flux_to_phase(num_or(p, "phi_e_flux", 0.0));
        m.EJ = detail::energy_ej(p, false);
        d.model = m;
    }
    validate(d.model);
    return d;
}

}  // namespace supco
