#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "supco/circuit.hpp"
#include "supco/drive.hpp"
#include "supco/effective.hpp"
#include "supco/eigenbasis.hpp"
#include "supco/errors.hpp"
#include "supco/io/builtin.hpp"
#include "supco/io/config.hpp"
#include "supco/io/emit.hpp"
#include "supco/oracle/oracle.hpp"
#include "supco/oracle/verify.hpp"
#include "supco/params.hpp"
#include "supco/sc.hpp"
#include "supco/sweep.hpp"
#include "supco/units.hpp"

using namespace supco;
using json = nlohmann::ordered_json;

namespace {

struct Source {
    std::string config;
    std::string example;
};

void add_source(CLI::App* cmd, Source& s) {
    auto* c = cmd->add_option("--config", s.config, "config file (YAML or JSON)");
    auto* e = cmd->add_option("--example", s.example, "built-in config name");
    c->excludes(e);
}

io::RunConfig load(const Source& s) {
    if (!s.example.empty()) return io::parse_yaml(io::builtin_config(s.example), s.example);
    if (s.config.empty()) throw Error(ErrorCode::ConfigError, "give --config or --example");
    return io::load_config(s.config);
}

// Opens `path` when given, otherwise falls back to stdout.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw Error(ErrorCode::ConfigError, path + ": cannot write");
        }
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }
    bool to_stdout() const { return !file_; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::string out_path(const std::string& flag, const io::RunConfig& cfg, const std::string& key) {
    if (!flag.empty()) return flag;
    return has(cfg.output, key) ? str(cfg.output, key, "output.") : "";
}

Engine parse_engine(const std::string& s) {
    if (s == "series") return Engine::Series;
    if (s == "closed") return Engine::Closed;
    if (s == "oracle") return Engine::Oracle;
    throw Error(ErrorCode::ConfigError, "engine must be series, closed or oracle (got '" + s + "')");
}

std::string numerics_engine(const io::RunConfig& cfg, const std::string& flag) {
    if (!flag.empty()) return flag;
    return has(cfg.numerics, "engine") ? str(cfg.numerics, "engine", "numerics.") : "series";
}

int numerics_int(const io::RunConfig& cfg, const std::string& key, int flag, int fallback) {
    if (flag >= 0) return flag;
    return has(cfg.numerics, key) ? integer(cfg.numerics, key, "numerics.") : fallback;
}

struct ResolvedDrive {
    bool flux = false;
    double pi_tilde = 0, pi_a = 0, pi_b = 0;
    std::string kind = "none";
};

ResolvedDrive resolve_drive(const CircuitDef& def, const ModeFrame& f, const Params& d) {
    ResolvedDrive r;
    const std::string w = "drive.";
    if (has(d, "Pi_a") || has(d, "Pi_b")) {
        r.flux = true;
        r.pi_a = num(d, "Pi_a", w);
        r.pi_b = num(d, "Pi_b", w);
        r.pi_tilde = r.pi_a - r.pi_b;
        r.kind = "flux_amplitudes";
    } else if (has(d, "phi_ac0")) {
        const auto fa = flux_drive_amplitudes(def.model, f, units::flux_to_phase(num(d, "phi_ac0", w)),
                                              units::from_ghz(num(d, "omega_d_GHz", w)));
        r.flux = true;
        r.pi_a = fa.pi_a;
        r.pi_b = fa.pi_b;
        r.pi_tilde = r.pi_a - r.pi_b;
        r.kind = "flux";
    } else if (has(d, "Omega_GHz")) {
        r.pi_tilde = capacitive_effective({units::from_ghz(num(d, "Omega_GHz", w)), units::from_ghz(num(d, "omega_d_GHz", w))},
                                          f.omega0)
                         .pi_tilde;
        r.kind = "capacitive";
    } else if (has(d, "Pi_tilde") || has(d, "Pi")) {
        if (has(d, "Pi") && has(d, "Pi_tilde")) throw Error(ErrorCode::ConfigError, "drive: give either Pi or Pi_tilde");
        r.pi_tilde = has(d, "Pi_tilde") ? num(d, "Pi_tilde", w) : pi_tilde_from_pi(f, num(d, "Pi", w));
        r.kind = "effective";
    }
    if (!r.flux) r.pi_a = r.pi_b = r.pi_tilde;
    return r;
}

ScValue closed_value(const CircuitDef& def, const ModeFrame& f, const ResolvedDrive& d, const ScIndex& idx) {
    if (auto hh = std::get_if<HigherHarmonics>(&def.model)) {
        if (d.flux) throw Error(ErrorCode::UnsupportedModel, "closed form for higher harmonics takes a capacitive drive");
        return sc_higher_harmonics(*hh, f, d.pi_tilde, idx);
    }
    return d.flux ? sc_closed_flux(def.model, f, d.pi_a, d.pi_b, idx) : sc_closed(def.model, f, d.pi_tilde, idx);
}

void summary(const std::string& line) { std::cerr << line << "\n"; }

// ---------------------------------------------------------------- sc

struct ScArgs {
    Source src;
    int nmax = -1, pmax = -1, smax = -1;
    std::string engine, csv;
};

int run_sc(const ScArgs& a) {
    const auto cfg = load(a.src);
    const auto def = build_circuit(cfg.circuit);
    const int S_max = numerics_int(cfg, "S_max", a.smax, 13);
    const int nl_max = numerics_int(cfg, "nl_max", a.nmax, 4);
    const int p_max = numerics_int(cfg, "p_max", a.pmax, 2);
    const auto f = mode_frame(def.model, def.EC, std::max({2 * S_max, nl_max + p_max, 8}));
    const auto drive = resolve_drive(def, f, cfg.drive);
    const std::string eng = numerics_engine(cfg, a.engine);
    std::vector<Engine> engines;
    if (eng == "both") engines = {Engine::Series, Engine::Closed};
    else engines = {parse_engine(eng)};

    std::optional<oracle::OracleResult> orc;
    for (auto e : engines)
        if (e == Engine::Oracle) {
            if (drive.flux) throw Error(ErrorCode::UnsupportedModel, "the oracle takes a single effective drive amplitude");
            oracle::OracleOptions o;
            o.nl_max = nl_max;
            o.p_max = p_max;
            o.dim = numerics_int(cfg, "dim", -1, o.dim);
            o.n_phase = numerics_int(cfg, "n_phase", -1, o.n_phase);
            orc = oracle::extract_sc(def.model, f, drive.pi_tilde, o);
        }

    Sink sink(out_path(a.csv, cfg, "csv"));
    io::CsvWriter w(sink.os(), "supco-sc/v1", {"n", "l", "p", "value_GHz", "engine", "convergence"});
    SeriesOptions so(S_max);
    for (const auto& idx : index_set(nl_max, p_max)) {
        for (auto e : engines) {
            ScValue v;
            if (e == Engine::Series) v = drive.flux ? sc_series_flux(f, drive.pi_a, drive.pi_b, idx, so) : sc_series(f, drive.pi_tilde, idx, so);
            else if (e == Engine::Closed) v = closed_value(def, f, drive, idx);
            else v = {orc->at(idx.n, idx.l, idx.p), Engine::Oracle, 0.0, true};
            w.row({idx.n, idx.l, idx.p, units::to_ghz(v.value), std::string(to_string(e)), v.convergence});
        }
    }
    summary("omega0_GHz=" + io::fmt_num(units::to_ghz(f.omega0)) + " phi_zpf=" + io::fmt_num(f.phi_zpf) +
            " pi_tilde=" + io::fmt_num(drive.pi_tilde) + " drive=" + drive.kind);
    return 0;
}

// ---------------------------------------------------------------- kerrcat

struct KerrArgs {
    Source src;
    int smax = -1, scan = 0;
    std::string engine, json_path, csv;
    bool no_corrections = false;
};

KerrCatOptions kerr_options(const io::RunConfig& cfg, const KerrArgs& a) {
    KerrCatOptions o;
    o.S_max = numerics_int(cfg, "S_max", a.smax, 13);
    o.correction_S_max = numerics_int(cfg, "correction_S_max", -1, -1);
    o.engine = parse_engine(numerics_engine(cfg, a.engine));
    if (o.engine == Engine::Oracle) throw Error(ErrorCode::ConfigError, "kerrcat supports the series and closed engines");
    o.corrections = !a.no_corrections && (!has(cfg.numerics, "corrections") || std::get<bool>(cfg.numerics.at("corrections")));
    o.fix_detuning_zero = !has(cfg.numerics, "fix_detuning_zero") || std::get<bool>(cfg.numerics.at("fix_detuning_zero"));
    if (!o.fix_detuning_zero && has(cfg.drive, "omega_d_GHz")) o.omega_d = units::from_ghz(num(cfg.drive, "omega_d_GHz"));
    return o;
}

KerrCatDrive kerr_drive(const ModeFrame& f, const Params& d) {
    const std::string w = "drive.";
    if (has(d, "phi_ac0")) return KerrCatDrive::flux(units::flux_to_phase(num(d, "phi_ac0", w)));
    if (has(d, "Omega_GHz")) return KerrCatDrive::capacitive(units::from_ghz(num(d, "Omega_GHz", w)));
    if (has(d, "Pi_a") || has(d, "Pi_b")) throw Error(ErrorCode::ConfigError, "kerrcat: give phi_ac0 for a flux drive");
    if (has(d, "Pi") && has(d, "Pi_tilde")) throw Error(ErrorCode::ConfigError, "drive: give either Pi or Pi_tilde");
    if (has(d, "Pi_tilde")) return KerrCatDrive::fixed(num(d, "Pi_tilde", w));
    if (has(d, "Pi")) return KerrCatDrive::fixed(pi_tilde_from_pi(f, num(d, "Pi", w)));
    return KerrCatDrive::fixed(0.0);
}

json kerr_record(const ModeFrame& f, const KerrCatParams& k) {
    json j;
    j["schema"] = "supco-kerrcat/v1";
    io::put(j, "omega0_GHz", units::to_ghz(f.omega0));
    io::put(j, "phi_zpf", f.phi_zpf);
    io::put(j, "pi_tilde", k.pi_tilde);
    io::put(j, "omega_d_GHz", units::to_ghz(k.omega_d));
    io::put(j, "omega_q_GHz", units::to_ghz(k.omega_q));
    io::put(j, "K_MHz", units::to_mhz(k.K));
    io::put(j, "eps2_MHz", units::to_mhz(k.eps2));
    io::put(j, "Delta_MHz", units::to_mhz(k.Delta));
    io::put(j, "cat_size", k.cat_size);
    io::put(j, "chaos_ratio", k.chaos_ratio);
    j["chaos_class"] = to_string(classify_chaos(k.chaos_ratio).cls);
    io::put(j, "gamma", k.gamma);
    io::put(j, "convergence", k.max_convergence);
    j["iterations"] = k.iterations;
    return j;
}

int run_kerrcat(const KerrArgs& a) {
    const auto cfg = load(a.src);
    const auto def = build_circuit(cfg.circuit);
    const auto opt = kerr_options(cfg, a);
    const auto f = mode_frame(def.model, def.EC, std::max(2 * opt.S_max, 8));
    const auto k = kerr_cat(def.model, f, kerr_drive(f, cfg.drive), opt);
    {
        Sink sink(out_path(a.json_path, cfg, "json"));
        sink.os() << kerr_record(f, k).dump(2) << "\n";
    }
    if (a.scan > 1) {
        const double top = num_or(cfg.numerics, "pi_tilde_max", 2.0);
        const std::string path = out_path(a.csv, cfg, "csv");
        if (path.empty()) throw Error(ErrorCode::ConfigError, "--scan needs --csv");
        Sink sink(path);
        io::CsvWriter w(sink.os(), "supco-kerrcat-scan/v1",
                        {"pi_tilde", "omega_q_GHz", "K_MHz", "eps2_MHz", "Delta_MHz", "cat_size", "chaos_ratio", "chaos_class"});
        for (int i = 0; i < a.scan; ++i) {
            const double pt = top * i / (a.scan - 1);
            const auto s = kerr_cat(def.model, f, KerrCatDrive::fixed(pt), opt);
            w.row({pt, units::to_ghz(s.omega_q), units::to_mhz(s.K), units::to_mhz(s.eps2), units::to_mhz(s.Delta), s.cat_size,
                   s.chaos_ratio, std::string(to_string(classify_chaos(s.chaos_ratio).cls))});
        }
    }
    summary("K_MHz=" + io::fmt_num(units::to_mhz(k.K)) + " eps2_MHz=" + io::fmt_num(units::to_mhz(k.eps2)) +
            " cat_size=" + io::fmt_num(k.cat_size));
    return 0;
}

// ---------------------------------------------------------------- beamsplitter

struct BsArgs {
    Source src;
    int smax = -1, scan = 0;
    std::string engine, json_path, csv;
};

json bs_record(const BeamSplitterParams& b) {
    json j;
    j["schema"] = "supco-beamsplitter/v1";
    io::put(j, "omega_a_GHz", units::to_ghz(b.omega_a));
    io::put(j, "omega_d_GHz", units::to_ghz(b.omega_d));
    io::put(j, "pi_tilde", b.pi_tilde);
    io::put(j, "g_BS_MHz", units::to_mhz(b.g_BS));
    io::put(j, "chi_bc_Hz", units::to_hz(b.chi_bc));
    io::put(j, "g_bc_MHz", units::to_mhz(b.g_bc));
    io::put(j, "g_ab_MHz", units::to_mhz(b.g_ab));
    io::put(j, "g_ac_MHz", units::to_mhz(b.g_ac));
    io::put(j, "Delta_a_MHz", units::to_mhz(b.Delta_a));
    io::put(j, "delta_tilde_MHz", units::to_mhz(b.delta_tilde));
    io::put(j, "xi_b", b.xi_b);
    io::put(j, "xi_c", b.xi_c);
    io::put(j, "on_off_ratio", b.chi_bc != 0.0 ? std::fabs(b.g_BS / b.chi_bc) : INFINITY);
    j["ratio_ok"] = b.ratio_ok;
    j["drive_ok"] = b.drive_ok;
    return j;
}

int run_beamsplitter(const BsArgs& a) {
    const auto cfg = load(a.src);
    const auto def = build_circuit(cfg.circuit);
    BeamSplitterOptions o;
    o.S_max = numerics_int(cfg, "S_max", a.smax, 13);
    o.engine = parse_engine(numerics_engine(cfg, a.engine));
    if (o.engine == Engine::Oracle) throw Error(ErrorCode::ConfigError, "beamsplitter supports the series and closed engines");
    o.pi_tilde_limit = num_or(cfg.numerics, "pi_tilde_max", o.pi_tilde_limit);
    const auto f = mode_frame(def.model, def.EC, std::max(2 * o.S_max, 8));
    const auto setup = detail::bs_setup(cfg.drive);
    const double pit = detail::drive_pi_tilde(cfg.drive, f);
    const auto b = beam_splitter(def.model, f, setup, pit, o);
    {
        Sink sink(out_path(a.json_path, cfg, "json"));
        sink.os() << bs_record(b).dump(2) << "\n";
    }
    if (a.scan > 1) {
        const std::string path = out_path(a.csv, cfg, "csv");
        if (path.empty()) throw Error(ErrorCode::ConfigError, "--scan needs --csv");
        Sink sink(path);
        io::CsvWriter w(sink.os(), "supco-beamsplitter-scan/v1",
                        {"pi_tilde", "g_BS_MHz", "chi_bc_Hz", "ratio_ab", "ratio_ac", "in_window"});
        std::vector<BeamSplitterParams> scan;
        for (int i = 0; i < a.scan; ++i) {
            const double pt = o.pi_tilde_limit * i / (a.scan - 1);
            scan.push_back(beam_splitter(def.model, f, setup, pt, o));
            const auto& s = scan.back();
            w.row({pt, units::to_mhz(s.g_BS), units::to_hz(s.chi_bc), s.ratio_ab, s.ratio_ac,
                   static_cast<long long>(s.ratio_ok && s.drive_ok)});
        }
        const auto rep = detect_downturn(scan);
        summary(std::string("downturn=") + (rep.feature ? "yes" : "no") + " window_end_pi_tilde=" +
                io::fmt_num(rep.window_end_pi_tilde) + " peak_MHz=" + io::fmt_num(units::to_mhz(rep.peak)));
    }
    summary("g_BS_MHz=" + io::fmt_num(units::to_mhz(b.g_BS)) + " chi_bc_Hz=" + io::fmt_num(units::to_hz(b.chi_bc)));
    return 0;
}

// ---------------------------------------------------------------- eigen

struct EigenArgs {
    Source src;
    int states = -1, pmax = -1, dim = -1;
    std::string basis, csv;
};

int run_eigen(const EigenArgs& a) {
    const auto cfg = load(a.src);
    const auto def = build_circuit(cfg.circuit);
    EigenOptions o;
    std::string basis = !a.basis.empty() ? a.basis : (has(cfg.numerics, "basis") ? str(cfg.numerics, "basis", "numerics.") : "grid");
    if (basis == "charge") o.basis = Basis::Charge;
    else if (basis != "grid") throw Error(ErrorCode::ConfigError, "basis must be grid or charge");
    o.dim = numerics_int(cfg, "dim", a.dim, o.basis == Basis::Charge ? 81 : 512);
    o.n_g = num_or(cfg.numerics, "n_g", 0.0);
    o.drive_ratio = num_or(cfg.numerics, "drive_ratio", 0.0);
    if (has(cfg.drive, "phi_ac0")) o.flux_ac0 = units::flux_to_phase(num(cfg.drive, "phi_ac0", "drive."));
    const int states = numerics_int(cfg, "states", a.states, 3);
    const int p_max = numerics_int(cfg, "p_max", a.pmax, 2);
    const auto fr = diagonalize_static(def.model, def.EC, o);
    if (states > fr.dim()) throw Error(ErrorCode::InvalidArgument, "more states requested than the basis holds");

    Sink sink(out_path(a.csv, cfg, "csv"));
    io::CsvWriter w(sink.os(), "supco-eigen/v1", {"j", "k", "p", "value_GHz", "imag_GHz"});
    for (int j = 0; j < states; ++j)
        for (int k = 0; k < states; ++k)
            for (int p = 0; p <= p_max; ++p) {
                const auto v = sc_eigen(fr, j, k, p);
                w.row({j, k, p, units::to_ghz(v.real()), units::to_ghz(v.imag())});
            }
    std::string e = "levels_GHz=";
    for (int j = 0; j < states; ++j) e += (j ? "," : "") + io::fmt_num(units::to_ghz(fr.energies(j) - fr.energies(0)));
    summary(e);
    return 0;
}

// ---------------------------------------------------------------- verify

int run_verify(const std::string& suite) {
    if (suite != "quick" && suite != "full") throw Error(ErrorCode::ConfigError, "suite must be quick or full");
    auto cases = oracle::standard_matrix();
    std::vector<double> drives = oracle::standard_drives();
    if (suite == "quick") {
        cases.resize(2);
        drives = {0.5};
    }
    bool ok = true;
    std::printf("%-10s %8s %12s %10s %s\n", "case", "pi_tilde", "max_rel_err", "worst", "result");
    for (const auto& c : cases)
        for (double pt : drives) {
            oracle::VerifyOutcome r;
            try {
                r = oracle::verify_case(c, pt);
            } catch (const Error& e) {
                r.name = c.name;
                r.pi_tilde = pt;
                r.max_error = INFINITY;
                r.pass = false;
                std::fprintf(stderr, "%s: %s\n", c.name.c_str(), e.what());
            }
            ok = ok && r.pass;
            const std::string worst = "(" + std::to_string(r.worst_n) + "," + std::to_string(r.worst_l) + "," + std::to_string(r.worst_p) + ")";
            std::printf("%-10s %8.3g %12.3e %10s %s\n", r.name.c_str(), pt, r.max_error, worst.c_str(), r.pass ? "PASS" : "FAIL");
        }
    return ok ? 0 : 2;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
    Source src;
    std::string csv, json_path;
    int threads = -1;
    double chaos = -1;
};

SweepSpec sweep_spec(const io::RunConfig& cfg, int threads) {
    SweepSpec s;
    if (cfg.axes.empty()) throw Error(ErrorCode::ConfigError, "sweep: no axes");
    s.task = cfg.sweep_target == "beamsplitter" ? SweepTask::BeamSplitter : SweepTask::KerrCat;
    s.circuit = cfg.circuit;
    s.drive = cfg.drive;
    s.axes = cfg.axes;
    s.constraints = cfg.constraints;
    s.S_max = numerics_int(cfg, "S_max", -1, 8);
    s.engine = parse_engine(numerics_engine(cfg, ""));
    if (s.engine == Engine::Oracle) throw Error(ErrorCode::ConfigError, "sweep supports the series and closed engines");
    s.pi_tilde_max = num_or(cfg.numerics, "pi_tilde_max", 2.0);
    s.threads = numerics_int(cfg, "threads", threads, 0);
    return s;
}

void write_sweep_csv(std::ostream& os, const SweepResult& r) {
    std::vector<std::string> cols = r.axis_keys;
    cols.insert(cols.end(), {"feasible", "reason"});
    cols.insert(cols.end(), r.metric_names.begin(), r.metric_names.end());
    cols.push_back("objective");
    io::CsvWriter w(os, "supco-sweep/v1", cols);
    for (const auto& p : r.points) {
        std::vector<io::Cell> row(p.coords.begin(), p.coords.end());
        row.emplace_back(static_cast<long long>(p.feasible));
        row.emplace_back(p.reason);
        for (const auto& m : r.metric_names) {
            auto it = p.metrics.find(m);
            if (it == p.metrics.end()) row.emplace_back(std::string());
            else row.emplace_back(it->second);
        }
        if (p.metrics.empty()) row.emplace_back(std::string());
        else row.emplace_back(p.objective);
        w.row(row);
    }
}

json point_json(const SweepResult& r, const SweepPoint& p) {
    json j;
    for (std::size_t i = 0; i < r.axis_keys.size(); ++i) io::put(j["coords"], r.axis_keys[i], p.coords[i]);
    for (const auto& [k, v] : p.metrics) io::put(j["metrics"], k, v);
    io::put(j, "objective", p.objective);
    return j;
}

int run_sweep_cmd(const SweepArgs& a) {
    const auto cfg = load(a.src);
    const auto spec = sweep_spec(cfg, a.threads);
    SweepResult r = run_sweep(spec);
    json summ;
    summ["schema"] = "supco-sweep-summary/v1";
    summ["target"] = spec.task == SweepTask::KerrCat ? "kerrcat" : "beamsplitter";
    summ["objective"] = r.objective_name;
    summ["points"] = r.points.size();
    if (a.chaos >= 0.0) {
        const auto rep = chaos_filter(r, a.chaos);
        summ["chaos_filter"] = {{"threshold", a.chaos}, {"removed", rep.removed}, {"argmax_before", rep.argmax_before},
                                {"argmax_after", rep.argmax_after}};
        r = rep.result;
    }
    std::size_t feasible = 0;
    for (const auto& p : r.points) feasible += p.feasible;
    summ["feasible"] = feasible;
    {
        Sink sink(out_path(a.csv, cfg, "csv"));
        write_sweep_csv(sink.os(), r);
    }
    if (r.argmax >= 0) {
        summ["argmax"] = r.argmax;
        summ["best"] = point_json(r, best_point(r));
    } else {
        summ["argmax"] = nullptr;
        summ["best"] = nullptr;
    }
    const std::string jp = out_path(a.json_path, cfg, "json");
    if (!jp.empty()) {
        Sink sink(jp);
        sink.os() << summ.dump(2) << "\n";
    } else {
        std::cerr << summ.dump(2) << "\n";
    }
    if (r.argmax < 0) {
        std::cerr << "error: " << to_string(ErrorCode::NoFeasiblePoint) << ": no grid point satisfies the constraints\n";
        return 1;
    }
    return 0;
}

// ---------------------------------------------------------------- examples

int run_examples(const std::string& name, bool as_json) {
    if (name.empty()) {
        for (const auto& [k, v] : io::builtin_configs()) std::cout << k << "\n";
        return 0;
    }
    const auto& text = io::builtin_config(name);
    if (as_json) std::cout << io::to_json(io::parse_yaml(text, name)).dump(2) << "\n";
    else std::cout << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"supco: supercoefficients of driven Josephson circuits"};
    app.require_subcommand(1);

    ScArgs sc;
    auto* c_sc = app.add_subcommand("sc", "table of supercoefficients");
    add_source(c_sc, sc.src);
    c_sc->add_option("--nmax", sc.nmax, "max 2n+l");
    c_sc->add_option("--pmax", sc.pmax, "max drive harmonic p");
    c_sc->add_option("--smax", sc.smax, "series truncation S_max");
    c_sc->add_option("--engine", sc.engine, "series | closed | oracle | both");
    c_sc->add_option("--csv", sc.csv, "output CSV path (default stdout)");

    KerrArgs kc;
    auto* c_kc = app.add_subcommand("kerrcat", "Kerr-cat effective parameters");
    add_source(c_kc, kc.src);
    c_kc->add_option("--smax", kc.smax, "series truncation S_max");
    c_kc->add_option("--engine", kc.engine, "series | closed");
    c_kc->add_flag("--no-corrections", kc.no_corrections, "drop first-order corrections");
    c_kc->add_option("--json", kc.json_path, "output JSON path (default stdout)");
    c_kc->add_option("--scan", kc.scan, "scan pi_tilde over [0, pi_tilde_max] with this many points");
    c_kc->add_option("--csv", kc.csv, "scan CSV path");

    BsArgs bs;
    auto* c_bs = app.add_subcommand("beamsplitter", "beam-splitter effective parameters");
    add_source(c_bs, bs.src);
    c_bs->add_option("--smax", bs.smax, "series truncation S_max");
    c_bs->add_option("--engine", bs.engine, "series | closed");
    c_bs->add_option("--json", bs.json_path, "output JSON path (default stdout)");
    c_bs->add_option("--scan", bs.scan, "scan pi_tilde over [0, pi_tilde_max] with this many points");
    c_bs->add_option("--csv", bs.csv, "scan CSV path");

    EigenArgs eg;
    auto* c_eg = app.add_subcommand("eigen", "supercoefficients in the static eigenbasis");
    add_source(c_eg, eg.src);
    c_eg->add_option("--states", eg.states, "number of eigenstates");
    c_eg->add_option("--pmax", eg.pmax, "max drive harmonic p");
    c_eg->add_option("--dim", eg.dim, "basis size");
    c_eg->add_option("--basis", eg.basis, "grid | charge");
    c_eg->add_option("--csv", eg.csv, "output CSV path (default stdout)");

    std::string suite = "quick";
    auto* c_vf = app.add_subcommand("verify", "cross-check the SC engines against the Fock-space oracle");
    c_vf->add_option("--suite", suite, "quick | full");

    SweepArgs sw;
    auto* c_sw = app.add_subcommand("sweep", "constrained parameter sweep");
    add_source(c_sw, sw.src);
    c_sw->add_option("--csv", sw.csv, "output CSV path (default stdout)");
    c_sw->add_option("--json", sw.json_path, "summary JSON path (default stderr)");
    c_sw->add_option("--threads", sw.threads, "worker threads (default SUPCO_THREADS or all cores)");
    c_sw->add_option("--chaos-filter", sw.chaos, "drop Kerr-cat points with eps2/omega_q above this ratio");

    std::string ex_name;
    bool ex_json = false;
    auto* c_ex = app.add_subcommand("examples", "list or print built-in configs");
    c_ex->add_option("name", ex_name, "config name");
    c_ex->add_flag("--json", ex_json, "print as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (c_sc->parsed()) return run_sc(sc);
        if (c_kc->parsed()) return run_kerrcat(kc);
        if (c_bs->parsed()) return run_beamsplitter(bs);
        if (c_eg->parsed()) return run_eigen(eg);
        if (c_vf->parsed()) return run_verify(suite);
        if (c_sw->parsed()) return run_sweep_cmd(sw);
        if (c_ex->parsed()) return run_examples(ex_name, ex_json);
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
