#pragma once

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "supco/errors.hpp"
#include "supco/params.hpp"
#include "supco/sweep.hpp"

namespace supco::io {

struct RunConfig {
    std::string task;  // sc | kerrcat | beamsplitter | eigen | verify | sweep
    Params circuit, drive, numerics, output;
    std::vector<SweepAxis> axes;
    std::vector<Constraint> constraints;
    std::string sweep_target;  // kerrcat | beamsplitter
};

inline const std::set<std::string>& drive_keys() {
    static const std::set<std::string> k = {"Pi",          "Pi_tilde",    "Pi_a",    "Pi_b",    "phi_ac0", "omega_d_GHz",
                                            "Omega_GHz",   "omega_b_GHz", "omega_c_GHz", "g_b_MHz", "g_c_MHz"};
    return k;
}

inline const std::set<std::string>& numerics_keys() {
    static const std::set<std::string> k = {"S_max", "nl_max",  "p_max", "engine",     "fix_detuning_zero", "corrections",
                                            "dim",   "n_phase", "basis", "n_g",        "drive_ratio",       "states",
                                            "threads", "pi_tilde_max", "chaos_threshold", "correction_S_max"};
    return k;
}

inline const std::set<std::string>& output_keys() {
    static const std::set<std::string> k = {"csv", "json"};
    return k;
}

inline const std::set<std::string>& task_names() {
    static const std::set<std::string> k = {"sc", "kerrcat", "beamsplitter", "eigen", "verify", "sweep"};
    return k;
}

namespace detail {

inline std::string at(const std::string& source, const YAML::Node& n) {
    const auto m = n.Mark();
    if (m.is_null()) return source + ": ";
    return source + ":" + std::to_string(m.line + 1) + ":" + std::to_string(m.column + 1) + ": ";
}

inline Value scalar_value(const YAML::Node& n, const std::string& where) {
    if (n.IsSequence()) {
        std::vector<double> v;
        for (const auto& e : n) {
            try {
                v.push_back(e.as<double>());
            } catch (const YAML::Exception&) {
                throw Error(ErrorCode::ConfigError, where + "expected a list of numbers");
            }
        }
        return v;
    }
    if (!n.IsScalar()) throw Error(ErrorCode::ConfigError, where + "expected a scalar value");
    const std::string s = n.Scalar();
    if (n.Tag() != "!") {  // unquoted
        if (s == "true" || s == "false") return s == "true";
        try {
            std::size_t used = 0;
            const double d = std::stod(s, &used);
            if (used == s.size()) return d;
        } catch (const std::exception&) {
        }
    }
    return s;
}

inline Params read_section(const YAML::Node& sec, const std::string& name, const std::string& source,
                           const std::set<std::string>* allowed) {
    Params p;
    if (!sec.IsMap()) throw Error(ErrorCode::ConfigError, at(source, sec) + name + ": expected a mapping");
    for (const auto& kv : sec) {
        const auto key = kv.first.as<std::string>();
        const std::string where = at(source, kv.first) + name + "." + key + ": ";
        if (allowed && !allowed->count(key)) throw Error(ErrorCode::ConfigError, where + "unknown key");
        p[key] = scalar_value(kv.second, where);
    }
    return p;
}

inline std::vector<double> axis_values(const YAML::Node& n, const std::string& where) {
    if (n.IsSequence()) return std::get<std::vector<double>>(scalar_value(n, where));
    if (!n.IsMap()) throw Error(ErrorCode::ConfigError, where + "expected a list or {start, stop, points}");
    for (const auto& kv : n) {
        const auto k = kv.first.as<std::string>();
        if (k != "start" && k != "stop" && k != "points") throw Error(ErrorCode::ConfigError, where + "unknown range key " + k);
    }
    if (!n["start"] || !n["stop"] || !n["points"]) throw Error(ErrorCode::ConfigError, where + "range needs start, stop and points");
    const double a = n["start"].as<double>(), b = n["stop"].as<double>();
    const int m = n["points"].as<int>();
    if (m < 1) throw Error(ErrorCode::ConfigError, where + "points must be positive");
    std::vector<double> v;
    for (int i = 0; i < m; ++i) v.push_back(m == 1 ? a : a + (b - a) * i / (m - 1));
    return v;
}

inline Constraint parse_constraint(const YAML::Node& n, const std::string& where) {
    if (!n.IsMap() || !n["quantity"] || !n["op"] || !n["value"])
        throw Error(ErrorCode::ConfigError, where + "constraint needs quantity, op and value");
    for (const auto& kv : n) {
        const auto k = kv.first.as<std::string>();
        if (k != "quantity" && k != "op" && k != "value") throw Error(ErrorCode::ConfigError, where + "unknown constraint key " + k);
    }
    Constraint c;
    c.quantity = n["quantity"].as<std::string>();
    const auto op = n["op"].as<std::string>();
    if (op == ">=") c.op = Constraint::Op::Ge;
    else if (op == "<=") c.op = Constraint::Op::Le;
    else throw Error(ErrorCode::ConfigError, where + "op must be \">=\" or \"<=\"");
    c.threshold = n["value"].as<double>();
    return c;
}

}  // namespace detail

inline void check_circuit(const Params& circuit, const std::string& where) {
    try {
        build_circuit(circuit);
    } catch (const Error& e) {
        throw Error(ErrorCode::ConfigError, where + e.what());
    }
}

inline RunConfig parse_yaml(const std::string& text, const std::string& source = "<config>") {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw Error(ErrorCode::ConfigError, source + ":" + std::to_string(e.mark.line + 1) + ":" +
                                                std::to_string(e.mark.column + 1) + ": " + e.msg);
    }
    if (!root.IsMap()) throw Error(ErrorCode::ConfigError, source + ": top level must be a mapping");
    RunConfig cfg;
    for (const auto& kv : root) {
        const auto key = kv.first.as<std::string>();
        const auto& v = kv.second;
        const std::string where = detail::at(source, kv.first);
        if (key == "schema") {
            if (v.as<std::string>() != "supco-config/v1") throw Error(ErrorCode::ConfigError, where + "unsupported schema");
        } else if (key == "task") {
            cfg.task = v.as<std::string>();
            if (!task_names().count(cfg.task)) throw Error(ErrorCode::ConfigError, where + "task: unknown task " + cfg.task);
        } else if (key == "circuit") {
            cfg.circuit = detail::read_section(v, "circuit", source, nullptr);
            if (!has(cfg.circuit, "family")) throw Error(ErrorCode::ConfigError, where + "circuit.family: missing");
            const auto& allowed = circuit_keys(str(cfg.circuit, "family"));
            for (const auto& c : v) {
                const auto k = c.first.as<std::string>();
                if (!allowed.count(k))
                    throw Error(ErrorCode::ConfigError, detail::at(source, c.first) + "circuit." + k + ": unknown key for this family");
            }
        } else if (key == "drive") {
            cfg.drive = detail::read_section(v, "drive", source, &drive_keys());
        } else if (key == "numerics") {
            cfg.numerics = detail::read_section(v, "numerics", source, &numerics_keys());
        } else if (key == "output") {
            cfg.output = detail::read_section(v, "output", source, &output_keys());
        } else if (key == "sweep") {
            if (!v.IsMap()) throw Error(ErrorCode::ConfigError, where + "sweep: expected a mapping");
            for (const auto& s : v) {
                const auto sk = s.first.as<std::string>();
                const std::string sw = detail::at(source, s.first) + "sweep." + sk + ": ";
                if (sk == "target") {
                    cfg.sweep_target = s.second.as<std::string>();
                    if (cfg.sweep_target != "kerrcat" && cfg.sweep_target != "beamsplitter")
                        throw Error(ErrorCode::ConfigError, sw + "target must be kerrcat or beamsplitter");
                } else if (sk == "axes") {
                    for (const auto& ax : s.second)
                        cfg.axes.push_back({ax.first.as<std::string>(),
                                            detail::axis_values(ax.second, detail::at(source, ax.first) + "sweep.axes." +
                                                                               ax.first.as<std::string>() + ": ")});
                } else if (sk == "constraints") {
                    if (!s.second.IsSequence()) throw Error(ErrorCode::ConfigError, sw + "expected a list");
                    for (const auto& c : s.second) cfg.constraints.push_back(detail::parse_constraint(c, detail::at(source, c)));
                } else {
                    throw Error(ErrorCode::ConfigError, sw + "unknown key");
                }
            }
        } else {
            throw Error(ErrorCode::ConfigError, where + key + ": unknown section");
        }
    }
    return cfg;
}

// JSON form; emitted by to_json and accepted back by parse_json.
inline nlohmann::ordered_json params_json(const Params& p) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : p) std::visit([&](const auto& x) { j[k] = x; }, v);
    return j;
}

inline nlohmann::ordered_json to_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["schema"] = "supco-config/v1";
    if (!c.task.empty()) j["task"] = c.task;
    if (!c.circuit.empty()) j["circuit"] = params_json(c.circuit);
    if (!c.drive.empty()) j["drive"] = params_json(c.drive);
    if (!c.numerics.empty()) j["numerics"] = params_json(c.numerics);
    if (!c.output.empty()) j["output"] = params_json(c.output);
    if (!c.axes.empty() || !c.constraints.empty() || !c.sweep_target.empty()) {
        auto& s = j["sweep"];
        if (!c.sweep_target.empty()) s["target"] = c.sweep_target;
        for (const auto& ax : c.axes) s["axes"][ax.key] = ax.values;
        for (const auto& k : c.constraints)
            s["constraints"].push_back({{"quantity", k.quantity}, {"op", k.op == Constraint::Op::Ge ? ">=" : "<="}, {"value", k.threshold}});
    }
    return j;
}

// JSON is a YAML subset, so the same validating reader handles it; numbers
// are re-read from their shortest round-trip representation.
inline RunConfig parse_json(const std::string& text, const std::string& source = "<json>") {
    try {
        const auto parsed = nlohmann::json::parse(text);
        if (!parsed.is_object()) throw Error(ErrorCode::ConfigError, source + ": top level must be an object");
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ConfigError, source + ": " + e.what());
    }
    return parse_yaml(text, source);
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigError, path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    const auto text = ss.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_json(text, path);
    return parse_yaml(text, path);
}

}  // namespace supco::io
