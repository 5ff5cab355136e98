#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "supco/circuit.hpp"
#include "supco/drive.hpp"
#include "supco/errors.hpp"
#include "supco/sc.hpp"
#include "supco/units.hpp"

namespace supco {

// coef * C(x) * C(y) / omega_d
struct KerrTerm {
    double coef;
    ScIndex x, y;
};

namespace kerr_terms {

inline const std::vector<KerrTerm>& eps2() {
    static const std::vector<KerrTerm> t = {
        {-2.0, {0, 1, 1}, {0, 3, 0}},      {-6.0, {0, 1, 0}, {0, 3, 1}},      {-6.0 / 5.0, {0, 1, 2}, {0, 3, 1}},
        {-6.0, {0, 2, 1}, {0, 4, 0}},      {-2.0, {0, 2, 0}, {1, 0, 1}},      {2.0, {0, 2, 2}, {1, 0, 1}},
        {-1.0, {0, 2, 1}, {1, 0, 2}},      {2.0, {0, 1, 1}, {1, 1, 0}},       {-12.0, {0, 3, 1}, {1, 1, 0}},
        {-2.0, {0, 1, 0}, {1, 1, 1}},      {2.0 / 3.0, {0, 1, 2}, {1, 1, 1}}, {-4.0, {0, 3, 0}, {1, 1, 1}},
    };
    return t;
}

inline const std::vector<KerrTerm>& kerr() {
    static const std::vector<KerrTerm> t = {
        {6.0, {0, 3, 0}, {0, 3, 0}},   {108.0 / 5.0, {0, 3, 1}, {0, 3, 1}}, {36.0, {0, 4, 0}, {0, 4, 0}},
        {6.0, {1, 1, 0}, {1, 1, 0}},   {-4.0, {1, 1, 1}, {1, 1, 1}},        {12.0, {0, 2, 0}, {1, 2, 0}},
        {18.0, {1, 2, 0}, {1, 2, 0}},
    };
    return t;
}

inline const std::vector<KerrTerm>& detuning() {
    static const std::vector<KerrTerm> t = {
        {-4.0, {0, 2, 0}, {0, 2, 0}},         {-2.0, {0, 2, 1}, {0, 2, 1}},   {8.0 / 3.0, {0, 2, 2}, {0, 2, 2}},
        {-12.0, {0, 3, 0}, {0, 3, 0}},        {-216.0 / 5.0, {0, 3, 1}, {0, 3, 1}}, {-48.0, {0, 4, 0}, {0, 4, 0}},
        {-8.0, {0, 1, 0}, {1, 1, 0}},         {-4.0, {1, 1, 0}, {1, 1, 0}},   {16.0 / 3.0, {0, 1, 1}, {1, 1, 1}},
        {8.0 / 3.0, {1, 1, 1}, {1, 1, 1}},    {-12.0, {0, 2, 0}, {1, 2, 0}},  {-6.0, {1, 2, 0}, {1, 2, 0}},
    };
    return t;
}

}  // namespace kerr_terms

struct KerrCatDrive {
    enum class Kind { FixedPiTilde, Capacitive, Flux };
    Kind kind = Kind::FixedPiTilde;
    double pi_tilde = 0;  // FixedPiTilde
    double Omega = 0;     // Capacitive, rad/ns
    double phi_ac0 = 0;   // Flux

    static KerrCatDrive fixed(double pi_tilde) { return {Kind::FixedPiTilde, pi_tilde, 0, 0}; }
    static KerrCatDrive capacitive(double Omega) { return {Kind::Capacitive, 0, Omega, 0}; }
    static KerrCatDrive flux(double phi_ac0) { return {Kind::Flux, 0, 0, phi_ac0}; }
};

struct KerrCatOptions {
    int S_max = 13;
    int correction_S_max = -1;  // series truncation for SCs inside corrections; -1 means S_max
    Engine engine = Engine::Series;
    bool corrections = true;
    bool fix_detuning_zero = true;
    double omega_d = 0;  // used when fix_detuning_zero is false; 0 means 2*omega0
    int max_iterations = 200;
    double tolerance = 1e-10;  // relative to omega0
};

struct KerrCatParams {
    double omega_q = 0, K = 0, eps2 = 0, Delta = 0;
    double omega_d = 0;
    double cat_size = 0, chaos_ratio = 0;
    double gamma = 0;
    double pi_tilde = 0, pi_a = 0, pi_b = 0;
    double Delta1 = 0, K1 = 0, eps2_1 = 0;
    double max_convergence = 0;  // worst series shell ratio among the SCs used
    int iterations = 0;
};

namespace detail {

using ScFn = std::function<double(const ScIndex&, bool)>;

inline double kerr_sum(const std::vector<KerrTerm>& terms, const ScFn& C, double omega_d) {
    double s = 0.0;
    for (const auto& t : terms) s += t.coef * C(t.x, true) * C(t.y, true);
    return s / omega_d;
}

}  // namespace detail

inline KerrCatParams kerr_cat(const CircuitModel& model, const ModeFrame& f, const KerrCatDrive& drive,
                              const KerrCatOptions& opt = {}) {
    const int corr_smax = opt.correction_S_max < 0 ? opt.S_max : opt.correction_S_max;
    KerrCatParams out;
    double worst = 0.0;

    auto evaluate = [&](double omega_d, KerrCatParams& r) {
        double pa = 0, pb = 0;
        bool flux = false;
        switch (drive.kind) {
            case KerrCatDrive::Kind::FixedPiTilde: pa = pb = drive.pi_tilde; break;
            case KerrCatDrive::Kind::Capacitive:
                pa = pb = capacitive_effective({drive.Omega, omega_d, 0.0}, f.omega0).pi_tilde;
                break;
            case KerrCatDrive::Kind::Flux: {
                const auto fa = flux_drive_amplitudes(model, f, drive.phi_ac0, omega_d);
                pa = fa.pi_a;
                pb = fa.pi_b;
                flux = true;
                break;
            }
        }
        r.pi_tilde = flux ? pa - pb : pa;
        r.pi_a = pa;
        r.pi_b = pb;
        std::map<std::tuple<int, int, int, bool>, double> cache;
        detail::ScFn C = [&](const ScIndex& idx, bool in_correction) {
            const auto key = std::make_tuple(idx.n, idx.l, idx.p, in_correction);
            if (auto it = cache.find(key); it != cache.end()) return it->second;
            ScValue v;
            if (opt.engine == Engine::Closed) {
                v = flux ? sc_closed_flux(model, f, pa, pb, idx) : sc_closed(model, f, pa, idx);
            } else {
                SeriesOptions so;
                so.S_max = in_correction ? corr_smax : opt.S_max;
                if (2 * idx.n + idx.l + idx.p > so.S_max) {
                    v.value = 0.0;
                } else {
                    v = flux ? sc_series_flux(f, pa, pb, idx, so) : sc_series(f, pa, idx, so);
                    if (v.value != 0.0) worst = std::max(worst, v.convergence);
                }
            }
            cache[key] = v.value;
            return v.value;
        };
        r.omega_d = omega_d;
        r.Delta1 = opt.corrections ? detail::kerr_sum(kerr_terms::detuning(), C, omega_d) : 0.0;
        r.K1 = opt.corrections ? detail::kerr_sum(kerr_terms::kerr(), C, omega_d) : 0.0;
        r.eps2_1 = opt.corrections ? detail::kerr_sum(kerr_terms::eps2(), C, omega_d) : 0.0;
        r.omega_q = f.omega0 + C({1, 0, 0}, false) + r.Delta1;
        r.K = -C({2, 0, 0}, false) + r.K1;
        r.eps2 = C({0, 2, 1}, false) + r.eps2_1;
        r.Delta = r.omega_q - 0.5 * omega_d;
    };

    if (opt.fix_detuning_zero) {
        double wd = 2.0 * f.omega0;
        bool done = false;
        for (int it = 1; it <= opt.max_iterations; ++it) {
            evaluate(wd, out);
            out.iterations = it;
            const double next = 0.5 * wd + out.omega_q;
            if (!std::isfinite(next)) break;
            if (std::fabs(out.Delta) < opt.tolerance * f.omega0) {
                done = true;
                break;
            }
            wd = next;
        }
        if (!done) throw Error(ErrorCode::FixedPointDiverged, "detuning fixed point did not converge");
    } else {
        evaluate(opt.omega_d > 0.0 ? opt.omega_d : 2.0 * f.omega0, out);
        out.iterations = 1;
    }

    out.gamma = out.K < 0.0 ? units::pi : 0.0;
    if (out.K < 0.0) out.eps2 = -out.eps2;
    out.cat_size = out.K != 0.0 ? std::fabs(out.eps2 / out.K) : INFINITY;
    out.chaos_ratio = out.omega_q > 0.0 ? std::fabs(out.eps2) / out.omega_q : INFINITY;
    out.max_convergence = worst;
    return out;
}

enum class ChaosClass { Regular, Onset, Chaotic };

inline const char* to_string(ChaosClass c) {
    switch (c) {
        case ChaosClass::Regular: return "regular";
        case ChaosClass::Onset: return "onset";
        case ChaosClass::Chaotic: return "chaotic";
    }
    return "?";
}

struct ChaosReport {
    double ratio = 0;
    ChaosClass cls = ChaosClass::Regular;
    double layer_width = 0;
};

inline ChaosReport classify_chaos(double ratio) {
    ChaosReport r;
    r.ratio = ratio;
    r.cls = ratio < 0.02 ? ChaosClass::Regular : (ratio <= 0.03 ? ChaosClass::Onset : ChaosClass::Chaotic);
    if (ratio > 0.0) {
        const double x = 1.0 / (4.0 * ratio);
        r.layer_width = x * std::exp(-x);
    }
    return r;
}

inline ChaosReport chaos_ratio(const KerrCatParams& p) {
    if (!(p.omega_q > 0.0)) throw Error(ErrorCode::InvalidArgument, "omega_q must be positive");
    return classify_chaos(std::fabs(p.eps2) / p.omega_q);
}

// Beam splitter between two linear cavities through a nonlinear coupler.

struct BeamSplitterSetup {
    double omega_b = 0, omega_c = 0;  // bare cavity frequencies
    double g_b = 0, g_c = 0;          // coupler-cavity couplings
};

// coef * C(x) * C(y) * sum_r w_r / (u_r omega_a' + v_r omega_d)
struct BsTerm {
    struct Den {
        double w, u, v;
    };
    double coef;
    ScIndex3 x, y;
    std::vector<Den> den;
};

namespace bs_terms {

inline ScIndex3 I(int na, int la, int nb, int lb, int nc, int lc, int p) { return {na, la, nb, lb, nc, lc, p}; }

inline const std::vector<BsTerm>& g_ab() {
    static const std::vector<BsTerm> t = {
        {-1, I(0, 1, 0, 1, 0, 0, 2), I(0, 2, 0, 0, 0, 0, 0), {{1, 1, 0}}},
        {-2, I(0, 1, 0, 1, 0, 0, 1), I(0, 2, 0, 0, 0, 0, 1), {{1, 2, -1}}},
        {-1, I(0, 1, 0, 1, 0, 0, 0), I(0, 2, 0, 0, 0, 0, 2), {{1, 1, -2}}},
        {-2, I(0, 1, 0, 0, 0, 0, 2), I(0, 2, 0, 1, 0, 0, 0), {{1, 1, 2}}},
        {-2, I(0, 1, 0, 0, 0, 0, 1), I(0, 2, 0, 1, 0, 0, 1), {{1, 1, 1}}},
        {-1, I(0, 1, 0, 1, 0, 0, 1), I(1, 0, 0, 0, 0, 0, 1), {{1, 0, 1}}},
        {-1, I(0, 1, 0, 0, 0, 0, 2), I(1, 0, 0, 1, 0, 0, 0), {{1, 1, -2}}},
        {-1, I(0, 1, 0, 0, 0, 0, 1), I(1, 0, 0, 1, 0, 0, 1), {{1, 1, -1}}},
    };
    return t;
}

inline const std::vector<BsTerm>& g_ac() {
    static const std::vector<BsTerm> t = {
        {-2, I(0, 1, 0, 0, 0, 1, 2), I(0, 2, 0, 0, 0, 0, 1), {{1, 2, -1}}},
        {-1, I(0, 1, 0, 0, 0, 1, 1), I(0, 2, 0, 0, 0, 0, 2), {{1, 1, -1}}},
        {-2, I(0, 1, 0, 0, 0, 0, 3), I(0, 2, 0, 0, 0, 1, 0), {{1, 1, 3}}},
        {-2, I(0, 1, 0, 0, 0, 0, 2), I(0, 2, 0, 0, 0, 1, 1), {{1, 1, 2}}},
        {-1, I(0, 1, 0, 0, 0, 1, 2), I(1, 0, 0, 0, 0, 0, 1), {{1, 0, 1}}},
        {-1, I(0, 1, 0, 0, 0, 1, 1), I(1, 0, 0, 0, 0, 0, 2), {{1, 0, 2}}},
        {-1, I(0, 1, 0, 0, 0, 0, 3), I(1, 0, 0, 0, 0, 1, 0), {{1, 1, -3}}},
        {-1, I(0, 1, 0, 0, 0, 0, 2), I(1, 0, 0, 0, 0, 1, 1), {{1, 1, -2}}},
    };
    return t;
}

inline const std::vector<BsTerm>& delta_a() {
    static const std::vector<BsTerm> t = {
        {-4, I(0, 1, 0, 0, 0, 0, 0), I(1, 1, 0, 0, 0, 0, 0), {{1, 1, 0}}},
        {-2, I(1, 1, 0, 0, 0, 0, 0), I(1, 1, 0, 0, 0, 0, 0), {{1, 1, 0}}},
        {-4, I(0, 1, 0, 0, 0, 0, 1), I(1, 1, 0, 0, 0, 0, 1), {{1, 1, -1}, {1, 1, 1}}},
        {-2, I(1, 1, 0, 0, 0, 0, 1), I(1, 1, 0, 0, 0, 0, 1), {{1, 1, -1}, {1, 1, 1}}},
    };
    return t;
}

inline const std::vector<BsTerm>& chi_bc() {
    static const std::vector<BsTerm> t = {
        {1, I(0, 1, 0, 1, 0, 1, 0), I(0, 1, 0, 1, 0, 1, 0), {{1, 1, -5}, {-1, 3, -5}, {-1, 1, -1}, {-1, 1, 1}}},
        {-2, I(0, 1, 0, 0, 0, 1, 0), I(0, 1, 1, 0, 0, 1, 0), {{1, 2, -3}, {1, 0, 3}}},
        {1, I(0, 1, 0, 1, 0, 1, 1), I(0, 1, 0, 1, 0, 1, 1),
         {{1, 1, -6}, {-2, 1, 0}, {1, 1, -4}, {-1, 3, -4}, {-4, 3, -6}, {-1, 1, 2}}},
        {-1, I(0, 1, 0, 1, 0, 0, 0), I(0, 1, 0, 1, 1, 0, 0), {{1, 1, -1}, {1, 0, 1}}},
        {-2, I(0, 1, 0, 0, 1, 0, 0), I(0, 1, 1, 0, 0, 0, 0), {{1, 1, 0}}},
        {-2, I(0, 1, 0, 0, 1, 0, 1), I(0, 1, 1, 0, 0, 0, 1), {{1, 1, -1}, {1, 1, 1}}},
    };
    return t;
}

}  // namespace bs_terms

struct BeamSplitterOptions {
    int S_max = 13;
    Engine engine = Engine::Series;
    int harmonic_n = 2;             // delta = omega_a' + omega_b' - n omega_d
    double ratio_limit = 0.25;      // g/delta~ constraint
    double pi_tilde_limit = 2.0;    // drive limit for series circuits
    double dispersive_limit = 0.25; // g/|omega - omega_a|
    double resonance_tol = 1e-12;   // |delta~| / omega_a
};

struct BeamSplitterParams {
    double g_BS = 0, chi_bc = 0, g_ab = 0, g_ac = 0, Delta_a = 0, delta_tilde = 0;
    double g_bc = 0, chi0 = 0, chi1 = 0, g_ab1 = 0, g_ac1 = 0, Delta_a1 = 0, delta = 0;
    double omega_a = 0, omega_a_p = 0, omega_b_p = 0, omega_c_p = 0, omega_d = 0;
    double xi_b = 0, xi_c = 0, pi_tilde = 0;
    double ratio_ab = 0, ratio_ac = 0;
    bool ratio_ok = true, drive_ok = true;
};

struct DressedModes {
    double omega_a_p, omega_b_p, omega_c_p, xi_b, xi_c;
};

inline DressedModes dressed_modes(double omega_a, const BeamSplitterSetup& s) {
    DressedModes d;
    d.omega_a_p = omega_a + s.g_b * s.g_b / (omega_a - s.omega_b) + s.g_c * s.g_c / (omega_a - s.omega_c);
    d.omega_b_p = s.omega_b - s.g_b * s.g_b / (omega_a - s.omega_b);
    d.omega_c_p = s.omega_c - s.g_c * s.g_c / (omega_a - s.omega_c);
    d.xi_b = 2.0 * s.g_b * s.omega_b / (s.omega_b * s.omega_b - omega_a * omega_a);
    d.xi_c = 2.0 * s.g_c * s.omega_c / (s.omega_c * s.omega_c - omega_a * omega_a);
    return d;
}

inline double bs_sum(const std::vector<BsTerm>& terms, const std::function<double(const ScIndex3&)>& C, double wa,
                     double wd) {
    double s = 0.0;
    for (const auto& t : terms) {
        double d = 0.0;
        for (const auto& q : t.den) d += q.w / (q.u * wa + q.v * wd);
        s += t.coef * C(t.x) * C(t.y) * d;
    }
    return s;
}

inline BeamSplitterParams beam_splitter(const CircuitModel& model, const ModeFrame& f, const BeamSplitterSetup& setup,
                                        double pi_tilde, const BeamSplitterOptions& opt = {}) {
    const double wa = f.omega0;
    if (std::fabs(setup.g_b) > opt.dispersive_limit * std::fabs(setup.omega_b - wa) ||
        std::fabs(setup.g_c) > opt.dispersive_limit * std::fabs(setup.omega_c - wa))
        throw Error(ErrorCode::DispersiveViolated, "coupler too close to a cavity for dispersive hybridization");
    const auto dm = dressed_modes(wa, setup);
    BeamSplitterParams r;
    r.omega_a = wa;
    r.omega_a_p = dm.omega_a_p;
    r.omega_b_p = dm.omega_b_p;
    r.omega_c_p = dm.omega_c_p;
    r.xi_b = dm.xi_b;
    r.xi_c = dm.xi_c;
    r.omega_d = dm.omega_c_p - dm.omega_b_p;
    r.delta = dm.omega_a_p + dm.omega_b_p - opt.harmonic_n * r.omega_d;
    r.pi_tilde = pi_tilde;
    SeriesOptions so;
    so.S_max = opt.S_max;
    std::map<std::vector<int>, double> cache;
    auto C = [&](const ScIndex3& i) {
        std::vector<int> key{i.na, i.la, i.nb, i.lb, i.nc, i.lc, i.p};
        if (auto it = cache.find(key); it != cache.end()) return it->second;
        const double v = sc_three_mode(model, f, dm.xi_b, dm.xi_c, pi_tilde, i, opt.engine, so).value;
        cache[key] = v;
        return v;
    };
    const int n = opt.harmonic_n;
    r.g_bc = C({0, 0, 0, 1, 0, 1, 1});
    const double gab0 = C({0, 1, 0, 1, 0, 0, n});
    const double gac0 = C({0, 1, 0, 0, 0, 1, n + 1});
    const double da0 = C({1, 0, 0, 0, 0, 0, 0});
    r.chi0 = C({0, 0, 1, 0, 1, 0, 0});
    const double w = dm.omega_a_p, d = r.omega_d;
    r.g_ab1 = bs_sum(bs_terms::g_ab(), C, w, d);
    r.g_ac1 = bs_sum(bs_terms::g_ac(), C, w, d);
    r.Delta_a1 = bs_sum(bs_terms::delta_a(), C, w, d);
    r.chi1 = bs_sum(bs_terms::chi_bc(), C, w, d);
    r.g_ab = gab0 + r.g_ab1;
    r.g_ac = gac0 + r.g_ac1;
    r.Delta_a = da0 + r.Delta_a1;
    r.chi_bc = r.chi0 + r.chi1;
    r.delta_tilde = r.delta + r.Delta_a;
    if (std::fabs(r.delta_tilde) < opt.resonance_tol * wa)
        throw Error(ErrorCode::ResonanceTooClose, "two-mode squeezing resonance delta~ = 0");
    r.g_BS = r.g_bc - 2.0 * r.g_ab * r.g_ac / r.delta_tilde;
    r.ratio_ab = r.g_ab / r.delta_tilde;
    r.ratio_ac = r.g_ac / r.delta_tilde;
    r.ratio_ok = std::fabs(r.ratio_ab) <= opt.ratio_limit && std::fabs(r.ratio_ac) <= opt.ratio_limit;
    r.drive_ok = std::fabs(pi_tilde) <= opt.pi_tilde_limit;
    return r;
}

// Feature detector for a beam-splitter downturn along a drive scan: a sign
// change or a drop of |g_BS| by more than `drop_tol` of its running maximum
// within the feasible window.
struct DownturnReport {
    bool feature = false;
    double window_end_pi_tilde = 0;
    double peak = 0;
    double drop = 0;
    int points = 0;
};

inline DownturnReport detect_downturn(const std::vector<BeamSplitterParams>& scan, double drop_tol = 0.01) {
    DownturnReport rep;
    double peak = 0.0;
    int sign = 0;
    for (const auto& p : scan) {
        if (!p.ratio_ok || !p.drive_ok) break;
        ++rep.points;
        rep.window_end_pi_tilde = p.pi_tilde;
        const double g = p.g_BS;
        if (g == 0.0) continue;
        const int s = g > 0 ? 1 : -1;
        if (sign != 0 && s != sign) rep.feature = true;
        if (sign == 0) sign = s;
        peak = std::max(peak, std::fabs(g));
        const double drop = (peak - std::fabs(g)) / peak;
        rep.drop = std::max(rep.drop, drop);
        if (drop > drop_tol) rep.feature = true;
    }
    rep.peak = peak;
    return rep;
}

// Closed-form weak-drive Kerr and squeezing rates of a SQUID array.
struct WeakDriveCheck {
    double K = 0, eps2 = 0;
};

inline WeakDriveCheck weak_drive_squid_check(const SquidArray& s, const ModeFrame& f, double phi_ac0) {
    const double M = s.M;
    const double ej = squid_effective_ej(s);
    const double g = std::exp(-f.phi_zpf * f.phi_zpf / (2.0 * M * M));
    const double dej = -s.EJ * s.alpha * std::sin(s.phi_dc) / std::sqrt(1.0 + s.alpha * s.alpha + 2.0 * s.alpha * std::cos(s.phi_dc));
    WeakDriveCheck w;
    w.K = f.EC * g / (2.0 * M * M);
    w.eps2 = 0.5 * phi_ac0 * std::sqrt(2.0 * f.EC / (M * ej)) * g * dej;
    return w;
}

}  // namespace supco
