#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "supco/circuit.hpp"
#include "supco/drive.hpp"
#include "supco/effective.hpp"
#include "supco/errors.hpp"
#include "supco/params.hpp"
#include "supco/units.hpp"

namespace supco {

enum class SweepTask { KerrCat, BeamSplitter };

struct SweepAxis {
    std::string key;  // a circuit or drive parameter name
    std::vector<double> values;
};

struct Constraint {
    enum class Op { Ge, Le };
    std::string quantity;  // a metric name, compared in absolute value
    Op op = Op::Ge;
    double threshold = 0;
};

struct SweepSpec {
    SweepTask task = SweepTask::KerrCat;
    Params circuit;  // fixed circuit parameters incl. family
    Params drive;    // Pi or Pi_tilde; beam splitter also omega_b_GHz etc.
    std::vector<SweepAxis> axes;
    std::vector<Constraint> constraints;
    int S_max = 8;
    Engine engine = Engine::Series;
    double pi_tilde_max = 2.0;
    bool enforce_drive_limit = true;  // series engine only
    int threads = 0;                  // 0: SUPCO_THREADS or hardware concurrency
};

struct SweepPoint {
    std::vector<double> coords;  // one per axis
    bool feasible = false;
    std::string reason;  // first violated check, empty when feasible
    std::map<std::string, double> metrics;
    double objective = 0;
};

struct SweepResult {
    std::vector<std::string> axis_keys;
    std::vector<std::string> metric_names;
    std::string objective_name;
    std::vector<SweepPoint> points;  // lexicographic grid order, last axis fastest
    int argmax = -1;
};

inline const std::vector<std::string>& kerr_metric_names() {
    static const std::vector<std::string> n = {"omega0_GHz", "phi_zpf", "pi_tilde", "omega_d_GHz", "omega_q_GHz", "K_MHz",
                                               "eps2_MHz", "cat_size", "chaos_ratio", "convergence"};
    return n;
}

inline const std::vector<std::string>& bs_metric_names() {
    static const std::vector<std::string> n = {"omega_a_GHz", "phi_zpf", "pi_tilde", "omega_d_GHz", "g_BS_MHz", "chi_bc_Hz",
                                               "g_ab_MHz", "g_ac_MHz", "Delta_a_MHz", "delta_tilde_MHz", "ratio_ab", "ratio_ac",
                                               "on_off_ratio"};
    return n;
}

namespace detail {

inline bool is_drive_key(const std::string& k) {
    return k == "Pi" || k == "Pi_tilde" || k == "omega_b_GHz" || k == "omega_c_GHz" || k == "g_b_MHz" || k == "g_c_MHz" ||
           k == "omega_d_GHz";
}

inline double drive_pi_tilde(const Params& drive, const ModeFrame& f) {
    if (has(drive, "Pi") && has(drive, "Pi_tilde")) throw Error(ErrorCode::ConfigError, "drive: give either Pi or Pi_tilde");
    if (has(drive, "Pi_tilde")) return num(drive, "Pi_tilde", "drive.");
    if (has(drive, "Pi")) return pi_tilde_from_pi(f, num(drive, "Pi", "drive."));
    throw Error(ErrorCode::ConfigError, "drive.Pi: missing (or give Pi_tilde)");
}

inline BeamSplitterSetup bs_setup(const Params& d) {
    return {units::from_ghz(num(d, "omega_b_GHz", "drive.")), units::from_ghz(num(d, "omega_c_GHz", "drive.")),
            units::from_ghz(1e-3 * num(d, "g_b_MHz", "drive.")), units::from_ghz(1e-3 * num(d, "g_c_MHz", "drive."))};
}

inline bool satisfies(const Constraint& c, double v) {
    return c.op == Constraint::Op::Ge ? std::fabs(v) >= c.threshold : std::fabs(v) <= c.threshold;
}

inline std::string describe(const Constraint& c) {
    return c.quantity + (c.op == Constraint::Op::Ge ? ">=" : "<=") + std::to_string(c.threshold);
}

inline int thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SUPCO_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace detail

// Evaluate one grid point. Checks run cheapest first: parameter bounds,
// mode frame, then SC-dependent quantities and constraints.
inline SweepPoint evaluate_point(const SweepSpec& spec, const std::vector<double>& coords) {
    SweepPoint pt;
    pt.coords = coords;
    Params circuit = spec.circuit, drive = spec.drive;
    for (std::size_t i = 0; i < spec.axes.size(); ++i) {
        const auto& key = spec.axes[i].key;
        if (detail::is_drive_key(key)) drive[key] = coords[i];
        else circuit[key] = coords[i];
    }
    try {
        const auto def = build_circuit(circuit);
        const int nmax = std::max(2 * spec.S_max, 8);
        const auto f = mode_frame(def.model, def.EC, nmax);
        const double pit = detail::drive_pi_tilde(drive, f);
        if (spec.engine == Engine::Series && spec.enforce_drive_limit && std::fabs(pit) > spec.pi_tilde_max) {
            pt.reason = "drive_limit";
            pt.metrics["pi_tilde"] = pit;
            return pt;
        }
        if (spec.task == SweepTask::KerrCat) {
            KerrCatOptions o;
            o.S_max = spec.S_max;
            o.engine = spec.engine;
            if (has(drive, "omega_d_GHz")) {
                o.fix_detuning_zero = false;
                o.omega_d = units::from_ghz(num(drive, "omega_d_GHz"));
            }
            const auto k = kerr_cat(def.model, f, KerrCatDrive::fixed(pit), o);
            pt.metrics = {{"omega0_GHz", units::to_ghz(f.omega0)},  {"phi_zpf", f.phi_zpf},
                          {"pi_tilde", pit},                         {"omega_d_GHz", units::to_ghz(k.omega_d)},
                          {"omega_q_GHz", units::to_ghz(k.omega_q)}, {"K_MHz", units::to_mhz(k.K)},
                          {"eps2_MHz", units::to_mhz(k.eps2)},       {"cat_size", k.cat_size},
                          {"chaos_ratio", k.chaos_ratio},            {"convergence", k.max_convergence}};
            pt.objective = k.cat_size;
        } else {
            BeamSplitterOptions o;
            o.S_max = spec.S_max;
            o.engine = spec.engine;
            o.pi_tilde_limit = spec.pi_tilde_max;
            const auto b = beam_splitter(def.model, f, detail::bs_setup(drive), pit, o);
            const double ratio = b.chi_bc != 0.0 ? std::fabs(b.g_BS / b.chi_bc) : INFINITY;
            pt.metrics = {{"omega_a_GHz", units::to_ghz(f.omega0)},
                          {"phi_zpf", f.phi_zpf},
                          {"pi_tilde", pit},
                          {"omega_d_GHz", units::to_ghz(b.omega_d)},
                          {"g_BS_MHz", units::to_mhz(b.g_BS)},
                          {"chi_bc_Hz", units::to_hz(b.chi_bc)},
                          {"g_ab_MHz", units::to_mhz(b.g_ab)},
                          {"g_ac_MHz", units::to_mhz(b.g_ac)},
                          {"Delta_a_MHz", units::to_mhz(b.Delta_a)},
                          {"delta_tilde_MHz", units::to_mhz(b.delta_tilde)},
                          {"ratio_ab", b.ratio_ab},
                          {"ratio_ac", b.ratio_ac},
                          {"on_off_ratio", ratio}};
            pt.objective = ratio;
            if (!b.ratio_ok) {
                pt.reason = "g/delta_limit";
                return pt;
            }
        }
    } catch (const Error& e) {
        pt.reason = to_string(e.code());
        return pt;
    }
    for (const auto& c : spec.constraints) {
        auto it = pt.metrics.find(c.quantity);
        if (it == pt.metrics.end()) throw Error(ErrorCode::ConfigError, "constraint on unknown quantity " + c.quantity);
        if (!detail::satisfies(c, it->second)) {
            pt.reason = detail::describe(c);
            return pt;
        }
    }
    pt.feasible = std::isfinite(pt.objective);
    if (!pt.feasible) pt.reason = "objective_not_finite";
    return pt;
}

inline int argmax_of(const std::vector<SweepPoint>& pts) {
    int best = -1;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (pts[i].feasible && (best < 0 || pts[i].objective > pts[static_cast<std::size_t>(best)].objective))
            best = static_cast<int>(i);
    return best;
}

inline std::vector<std::vector<double>> grid_points(const std::vector<SweepAxis>& axes) {
    std::vector<std::vector<double>> out{{}};
    for (const auto& ax : axes) {
        if (ax.values.empty()) throw Error(ErrorCode::ConfigError, "sweep axis " + ax.key + " has no values");
        std::vector<std::vector<double>> next;
        for (const auto& prefix : out)
            for (double v : ax.values) {
                auto c = prefix;
                c.push_back(v);
                next.push_back(std::move(c));
            }
        out = std::move(next);
    }
    return out;
}

inline SweepResult run_sweep(const SweepSpec& spec) {
    SweepResult r;
    for (const auto& ax : spec.axes) r.axis_keys.push_back(ax.key);
    r.metric_names = spec.task == SweepTask::KerrCat ? kerr_metric_names() : bs_metric_names();
    r.objective_name = spec.task == SweepTask::KerrCat ? "cat_size" : "on_off_ratio";
    const auto grid = grid_points(spec.axes);
    r.points.resize(grid.size());
    const int nthreads = std::min<int>(detail::thread_count(spec.threads), static_cast<int>(grid.size()));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(std::max(nthreads, 1)));
    auto worker = [&](int id) {
        try {
            for (std::size_t i = next++; i < grid.size(); i = next++) r.points[i] = evaluate_point(spec, grid[i]);
        } catch (...) {
            errors[static_cast<std::size_t>(id)] = std::current_exception();
        }
    };
    if (nthreads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    r.argmax = argmax_of(r.points);
    return r;
}

inline const SweepPoint& best_point(const SweepResult& r) {
    if (r.argmax < 0) throw Error(ErrorCode::NoFeasiblePoint, "no grid point satisfies the constraints");
    return r.points[static_cast<std::size_t>(r.argmax)];
}

struct ChaosFilterReport {
    SweepResult result;
    int argmax_before = -1, argmax_after = -1;
    int removed = 0;
};

// Flags Kerr-cat points whose chaos ratio exceeds the threshold as infeasible.
inline ChaosFilterReport chaos_filter(const SweepResult& in, double threshold = 0.025) {
    ChaosFilterReport rep;
    rep.result = in;
    rep.argmax_before = in.argmax;
    for (auto& p : rep.result.points) {
        if (!p.feasible) continue;
        auto it = p.metrics.find("chaos_ratio");
        if (it == p.metrics.end()) throw Error(ErrorCode::InvalidArgument, "chaos filter needs Kerr-cat results");
        if (it->second > threshold) {
            p.feasible = false;
            p.reason = "chaos_ratio>" + std::to_string(threshold);
            ++rep.removed;
        }
    }
    rep.result.argmax = argmax_of(rep.result.points);
    rep.argmax_after = rep.result.argmax;
    return rep;
}

}  // namespace supco
