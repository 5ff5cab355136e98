#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "supco/bessel.hpp"
#include "supco/circuit.hpp"
#include "supco/errors.hpp"

namespace supco {

struct ScIndex {
    int n = 0, l = 0, p = 0;
};

// Three-mode index: coupler (a) and two linear modes (b, c).
struct ScIndex3 {
    int na = 0, la = 0, nb = 0, lb = 0, nc = 0, lc = 0, p = 0;
};

enum class Engine { Series, Closed, Oracle };

inline const char* to_string(Engine e) {
    switch (e) {
        case Engine::Series: return "series";
        case Engine::Closed: return "closed";
        case Engine::Oracle: return "oracle";
    }
    return "?";
}

// Amplitudes are unhalved: the 1/2 multiplier for l = 0, p = 0 terms
// belongs to whoever assembles the Hamiltonian.
struct ScValue {
    double value = 0.0;
    Engine engine = Engine::Series;
    double convergence = 0.0;  // |last shell| / |value|, series only
    bool converged = true;
};

struct SeriesOptions {
    SeriesOptions() = default;
    SeriesOptions(int s_max) : S_max(s_max) {}
    int S_max = 13;
    double warn_tol = 1e-6;
    double fail_tol = -1.0;  // throw NotConverged above this ratio when >= 0
};

// Displacement of drive i as seen by cosine group g (two groups at most).
using GroupAmplitudes = std::array<double, 2>;

// Shared description of one SC evaluation: total operator order, the
// factorial/hybridization prefactor and the Gaussian variance.
struct ScShape {
    int order = 0;           // 2n+l (summed over modes)
    double prefactor = 1.0;  // xi factors / prod n!(n+l)!
    double variance = 0.0;   // phi_zpf^2 (1 + xi_b^2 + xi_c^2)
};

namespace detail {

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline ScShape single_shape(const ModeFrame& f, const ScIndex& idx) {
    if (idx.n < 0 || idx.l < 0 || idx.p < 0) throw Error(ErrorCode::InvalidArgument, "negative SC index");
    return {2 * idx.n + idx.l, 1.0 / (factorial(idx.n) * factorial(idx.n + idx.l)), f.phi_zpf * f.phi_zpf};
}

inline ScShape three_shape(const ModeFrame& f, double xi_b, double xi_c, const ScIndex3& i) {
    if (i.na < 0 || i.la < 0 || i.nb < 0 || i.lb < 0 || i.nc < 0 || i.lc < 0 || i.p < 0)
        throw Error(ErrorCode::InvalidArgument, "negative SC index");
    ScShape s;
    s.order = 2 * (i.na + i.nb + i.nc) + i.la + i.lb + i.lc;
    s.prefactor = std::pow(xi_b, 2 * i.nb + i.lb) * std::pow(xi_c, 2 * i.nc + i.lc) /
                  (factorial(i.na) * factorial(i.na + i.la) * factorial(i.nb) * factorial(i.nb + i.lb) *
                   factorial(i.nc) * factorial(i.nc + i.lc));
    s.variance = f.phi_zpf * f.phi_zpf * (1.0 + xi_b * xi_b + xi_c * xi_c);
    return s;
}

// Visit every drive-index vector k with 2*sum(k) <= budget.
template <class F>
void for_each_k(std::vector<int>& k, std::size_t i, int budget, F&& fn) {
    if (i == k.size()) {
        fn();
        return;
    }
    for (int ki = 0; 2 * ki <= budget; ++ki) {
        k[i] = ki;
        for_each_k(k, i + 1, budget - 2 * ki, fn);
    }
    k[i] = 0;
}

}  // namespace detail

// Truncated-series engine. c_groups[g] holds c^{(g)}_0..; amps[i][g] is the
// displacement of drive i on group g; p[i] its harmonic index.
inline ScValue sc_series_core(const std::vector<std::vector<double>>& c_groups, double EJ, double phi_zpf,
                              const ScShape& shape, const std::vector<int>& p,
                              const std::vector<GroupAmplitudes>& amps, const SeriesOptions& opt) {
    if (opt.S_max < 3) throw Error(ErrorCode::InvalidArgument, "S_max must be at least 3");
    if (p.size() != amps.size()) throw Error(ErrorCode::InvalidArgument, "drive index/amplitude mismatch");
    int P = 0;
    for (int pi : p) {
        if (pi < 0) throw Error(ErrorCode::InvalidArgument, "negative drive index");
        P += pi;
    }
    for (const auto& c : c_groups)
        if (static_cast<int>(c.size()) <= opt.S_max)
            throw Error(ErrorCode::InvalidArgument, "nonlinear coefficient list shorter than S_max");

    std::vector<double> shell(static_cast<std::size_t>(opt.S_max) + 1, 0.0);
    const double base = EJ * std::pow(phi_zpf, shape.order) * shape.prefactor;
    const int S0 = shape.order + P;
    std::vector<int> k(p.size(), 0);
    for (int m = 0; S0 + 2 * m <= opt.S_max; ++m) {
        const double mterm = std::pow(0.5 * shape.variance, m) / detail::factorial(m);
        detail::for_each_k(k, 0, opt.S_max - S0 - 2 * m, [&] {
            int S = S0 + 2 * m;
            for (int ki : k) S += 2 * ki;
            if (S < 3) return;
            for (std::size_t g = 0; g < c_groups.size(); ++g) {
                double t = c_groups[g][static_cast<std::size_t>(S)] * mterm;
                for (std::size_t i = 0; i < p.size(); ++i) {
                    const int e = 2 * k[i] + p[i];
                    t *= std::pow(0.5 * amps[i][g], e) / (detail::factorial(k[i]) * detail::factorial(k[i] + p[i]));
                }
                shell[static_cast<std::size_t>(S)] += t;
            }
        });
    }
    ScValue out;
    out.engine = Engine::Series;
    double sum = 0.0;
    for (double s : shell) sum += s;
    out.value = base * sum;
    int last = opt.S_max;
    if ((last - S0) % 2 != 0) --last;
    const double last_mag = std::fabs(base * shell[static_cast<std::size_t>(std::max(last, 0))]);
    out.convergence = out.value != 0.0 ? last_mag / std::fabs(out.value) : (last_mag == 0.0 ? 0.0 : INFINITY);
    out.converged = out.convergence <= opt.warn_tol;
    if (opt.fail_tol >= 0.0 && out.convergence > opt.fail_tol)
        throw Error(ErrorCode::NotConverged, "last series shell exceeds tolerance");
    return out;
}

// Bessel closed form over a cosine-sum potential, with every excluded
// (S < 3) series term subtracted explicitly.
inline ScValue sc_closed_core(const std::vector<CosTerm>& terms, double EJ, double phi0, double phi_zpf,
                              const ScShape& shape, const std::vector<int>& p,
                              const std::vector<GroupAmplitudes>& amps) {
    (void)EJ;
    if (p.size() != amps.size()) throw Error(ErrorCode::InvalidArgument, "drive index/amplitude mismatch");
    int P = 0;
    int pmax = 0;
    for (int pi : p) {
        if (pi < 0) throw Error(ErrorCode::InvalidArgument, "negative drive index");
        P += pi;
        pmax = std::max(pmax, pi);
    }
    const int q = shape.order + P;
    // Extended precision: the subtraction of low-order terms cancels.
    using R = long double;
    const R var = shape.variance;
    R total = 0;
    std::vector<int> k(p.size(), 0);
    for (const auto& t : terms) {
        const R tk = t.k;
        const R x = tk * phi0 + static_cast<R>(t.theta);
        R bessel = 1;
        for (std::size_t i = 0; i < p.size(); ++i)
            bessel *= bessel_j<R>(p[i], tk * static_cast<R>(amps[i][static_cast<std::size_t>(t.group)]));
        R v = std::pow(tk, shape.order) * std::exp(-var * tk * tk / 2) * bessel * detail::cos_shift(q, x);
        if (q < 3) {
            for (int m = 0; q + 2 * m < 3; ++m) {
                detail::for_each_k(k, 0, 2 - q - 2 * m, [&] {
                    int S = q + 2 * m;
                    for (int ki : k) S += 2 * ki;
                    if (S >= 3) return;
                    R e = std::pow(tk, S) * detail::cos_shift(S, x) * std::pow(var / 2, m) / static_cast<R>(detail::factorial(m));
                    for (std::size_t i = 0; i < p.size(); ++i) {
                        const R a = amps[i][static_cast<std::size_t>(t.group)];
                        e *= std::pow(a / 2, 2 * k[i] + p[i]) / static_cast<R>(detail::factorial(k[i]) * detail::factorial(k[i] + p[i]));
                    }
                    v -= e;
                });
            }
        }
        total += static_cast<R>(t.amp) * v;
    }
    ScValue out;
    out.engine = Engine::Closed;
    out.value = static_cast<double>(std::pow(static_cast<R>(phi_zpf), shape.order) * static_cast<R>(shape.prefactor) * total);
    return out;
}

namespace detail {

inline std::vector<CosTerm> require_terms(const CircuitModel& model) {
    auto t = cos_terms(model);
    if (!t) throw Error(ErrorCode::UnsupportedModel, "closed form needs a permutation-symmetric circuit without stray inductance");
    return *t;
}

}  // namespace detail

// Capacitive drive with effective displacement Pi_tilde.
inline ScValue sc_series(const ModeFrame& f, double pi_tilde, const ScIndex& idx, const SeriesOptions& opt = {}) {
    return sc_series_core({f.c}, f.EJ, f.phi_zpf, detail::single_shape(f, idx), {idx.p}, {{pi_tilde, pi_tilde}}, opt);
}

inline ScValue sc_closed(const CircuitModel& model, const ModeFrame& f, double pi_tilde, const ScIndex& idx) {
    return sc_closed_core(detail::require_terms(model), f.EJ, f.phi0, f.phi_zpf, detail::single_shape(f, idx), {idx.p},
                          {{pi_tilde, pi_tilde}});
}

inline ScValue sc_higher_harmonics(const HigherHarmonics& model, const ModeFrame& f, double pi_tilde, const ScIndex& idx) {
    return sc_closed(CircuitModel{model}, f, pi_tilde, idx);
}

// Flux drive: group a sees Pi_a, group b sees Pi_b.
inline ScValue sc_series_flux(const ModeFrame& f, double pi_a, double pi_b, const ScIndex& idx, const SeriesOptions& opt = {}) {
    if (f.c_group.size() != 2) throw Error(ErrorCode::UnsupportedModel, "flux drive needs a two-group potential");
    return sc_series_core(f.c_group, f.EJ, f.phi_zpf, detail::single_shape(f, idx), {idx.p}, {{pi_a, pi_b}}, opt);
}

inline ScValue sc_closed_flux(const CircuitModel& model, const ModeFrame& f, double pi_a, double pi_b, const ScIndex& idx) {
    return sc_closed_core(detail::require_terms(model), f.EJ, f.phi0, f.phi_zpf, detail::single_shape(f, idx), {idx.p},
                          {{pi_a, pi_b}});
}

// SQUID-array SC written through the amplitude A_p and phase lambda'_p.
struct SquidCompact {
    double A_p;
    double lambda_p;
};

inline SquidCompact squid_compact_terms(const SquidArray& s, double pi_a, double pi_b, int p) {
    const double ja = bessel_j(p, pi_a / s.M);
    const double jb = bessel_j(p, pi_b / s.M);
    const double y = s.alpha * ja * std::sin(s.ra * s.phi_dc) - jb * std::sin(s.rb * s.phi_dc);
    const double x = s.alpha * ja * std::cos(s.ra * s.phi_dc) + jb * std::cos(s.rb * s.phi_dc);
    const double a2 = s.alpha * s.alpha * ja * ja + jb * jb + 2.0 * s.alpha * ja * jb * std::cos(s.phi_dc);
    return {std::sqrt(std::max(a2, 0.0)), std::atan2(y, x)};
}

inline ScValue sc_squid_compact(const SquidArray& s, const ModeFrame& f, double pi_a, double pi_b, const ScIndex& idx) {
    const int order = 2 * idx.n + idx.l;
    const int q = order + idx.p;
    if (q < 3) throw Error(ErrorCode::InvalidArgument, "compact SQUID form covers 2n+l+p >= 3 only");
    const auto cp = squid_compact_terms(s, pi_a, pi_b, idx.p);
    const double M = s.M;
    ScValue out;
    out.engine = Engine::Closed;
    out.value = -s.EJ * std::pow(f.phi_zpf, order) * std::exp(-f.phi_zpf * f.phi_zpf / (2.0 * M * M)) /
                (detail::factorial(idx.n) * detail::factorial(idx.n + idx.l) * std::pow(M, order - 1)) * cp.A_p *
                detail::cos_shift(q, f.phi0 / M - cp.lambda_p);
    return out;
}

// Several capacitive drives plus at most one flux drive.
struct MultiDrive {
    std::vector<double> capacitive;  // Pi_tilde_i
    bool has_flux = false;
    double pi_a = 0.0, pi_b = 0.0;
};

inline std::vector<GroupAmplitudes> multidrive_amps(const MultiDrive& d) {
    std::vector<GroupAmplitudes> a;
    for (double x : d.capacitive) a.push_back({x, x});
    if (d.has_flux) a.push_back({d.pi_a, d.pi_b});
    return a;
}

// p lists the harmonic index per drive, flux drive last.
inline ScValue sc_multidrive_series(const ModeFrame& f, const MultiDrive& d, int n, int l, const std::vector<int>& p,
                                    const SeriesOptions& opt = {}) {
    const auto amps = multidrive_amps(d);
    if (amps.size() != p.size()) throw Error(ErrorCode::InvalidArgument, "one p index per drive required");
    std::vector<std::vector<double>> groups = d.has_flux ? f.c_group : std::vector<std::vector<double>>{f.c};
    return sc_series_core(groups, f.EJ, f.phi_zpf, detail::single_shape(f, {n, l, 0}), p, amps, opt);
}

inline ScValue sc_multidrive_closed(const CircuitModel& model, const ModeFrame& f, const MultiDrive& d, int n, int l,
                                    const std::vector<int>& p) {
    const auto amps = multidrive_amps(d);
    if (amps.size() != p.size()) throw Error(ErrorCode::InvalidArgument, "one p index per drive required");
    return sc_closed_core(detail::require_terms(model), f.EJ, f.phi0, f.phi_zpf, detail::single_shape(f, {n, l, 0}), p, amps);
}

// Coupler mode hybridized with two linear modes.
inline ScValue sc_three_mode(const CircuitModel& model, const ModeFrame& f, double xi_b, double xi_c, double pi_tilde,
                             const ScIndex3& idx, Engine engine, const SeriesOptions& opt = {}) {
    const auto shape = detail::three_shape(f, xi_b, xi_c, idx);
    if (engine == Engine::Closed)
        return sc_closed_core(detail::require_terms(model), f.EJ, f.phi0, f.phi_zpf, shape, {idx.p}, {{pi_tilde, pi_tilde}});
    return sc_series_core({f.c}, f.EJ, f.phi_zpf, shape, {idx.p}, {{pi_tilde, pi_tilde}}, opt);
}

struct ScRow {
    ScIndex idx;
    ScValue value;
};

// All (n, l, p) with 2n+l <= nl_max and p <= p_max.
inline std::vector<ScIndex> index_set(int nl_max, int p_max) {
    std::vector<ScIndex> v;
    for (int n = 0; 2 * n <= nl_max; ++n)
        for (int l = 0; 2 * n + l <= nl_max; ++l)
            for (int p = 0; p <= p_max; ++p) v.push_back({n, l, p});
    return v;
}

}  // namespace supco
