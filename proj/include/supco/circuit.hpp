#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "supco/errors.hpp"
#include "supco/units.hpp"

namespace supco {

// Energies (A, B, E_J, ...) are in rad/ns; phases in radians.
struct TwoCosine {
    double A = 0, B = 0;
    double a1 = 1, b1 = 0, a2 = 0, b2 = 0;
    double phi_e = 0;
    double EJ = 0;  // energy scale; 0 means max(|A|, |B|)
};

struct SnailArray {
    int M = 1;
    int N = 3;
    double alpha = 0.1;
    double EJ = 0;
    double phi_e = 0;
};

struct SnailArrayStrayL {
    int M = 1;
    int N = 3;
    double alpha = 0.1;
    double EJ = 0;
    double phi_e = 0;
    double xJ = 1;  // L_J / L
};

struct SquidArray {
    int M = 1;
    double alpha = 1;
    double EJ = 0;
    double ra = 0.5, rb = 0.5;
    double phi_dc = 0;
};

struct HigherHarmonics {
    std::vector<double> A, B;  // A[m-1] multiplies cos(m a1 phi + a2 phi_e)
    double a1 = 1, b1 = 0, a2 = 0, b2 = 0;
    double phi_e = 0;
    double EJ = 0;
};

using CircuitModel = std::variant<TwoCosine, SnailArray, SnailArrayStrayL, SquidArray, HigherHarmonics>;

// One term amp*cos(k*phi + theta) of a cosine-sum potential. `group` selects
// which drive displacement the term sees under a flux drive (0 = a, 1 = b).
struct CosTerm {
    double amp;
    double k;
    double theta;
    int group;
};

inline std::string model_kind(const CircuitModel& m) {
    return std::visit([](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, TwoCosine>) return "TwoCosine";
        else if constexpr (std::is_same_v<T, SnailArray>) return "SnailArray";
        else if constexpr (std::is_same_v<T, SnailArrayStrayL>) return "SnailArrayStrayL";
        else if constexpr (std::is_same_v<T, SquidArray>) return "SquidArray";
        else return "HigherHarmonics";
    }, m);
}

inline bool is_symmetric(const CircuitModel& m) { return !std::holds_alternative<SnailArrayStrayL>(m); }

inline void validate(const CircuitModel& model) {
    auto bad = [](const std::string& s) { throw Error(ErrorCode::InvalidArgument, s); };
    std::visit([&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SnailArray> || std::is_same_v<T, SnailArrayStrayL>) {
            if (v.M < 1) bad("SNAIL array needs M >= 1");
            if (v.N < 1) bad("SNAIL needs N >= 1");
            if (!(v.alpha > 0.0) || !(v.alpha < 1.0)) bad("alpha_s must lie in (0, 1)");
            if (!(v.alpha < 1.0 / v.N)) bad("alpha_s must be below 1/N for a single minimum");
            if (!(v.EJ > 0.0)) bad("E_J must be positive");
            if constexpr (std::is_same_v<T, SnailArrayStrayL>) {
                if (!(v.xJ > 0.0)) bad("x_J must be positive");
            }
        } else if constexpr (std::is_same_v<T, SquidArray>) {
            if (v.M < 1) bad("SQUID array needs M >= 1");
            if (!(v.alpha > 0.0)) bad("alpha_s must be positive");
            if (!(v.EJ > 0.0)) bad("E_J must be positive");
            if (std::fabs(v.ra + v.rb - 1.0) > 1e-12) bad("r_a + r_b must equal 1");
        } else if constexpr (std::is_same_v<T, TwoCosine>) {
            if (v.A == 0.0 && v.B == 0.0) bad("two-cosine potential with zero amplitudes");
        } else {
            if (v.A.empty() && v.B.empty()) bad("higher-harmonics model without amplitudes");
        }
    }, model);
}

inline double energy_scale(const CircuitModel& model) {
    return std::visit([](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, TwoCosine>) {
            return v.EJ > 0 ? v.EJ : std::max(std::fabs(v.A), std::fabs(v.B));
        } else if constexpr (std::is_same_v<T, HigherHarmonics>) {
            if (v.EJ > 0) return v.EJ;
            double e = 0;
            for (double a : v.A) e = std::max(e, std::fabs(a));
            for (double b : v.B) e = std::max(e, std::fabs(b));
            return e;
        } else {
            return v.EJ;
        }
    }, model);
}

// Cosine-sum representation; empty for the stray-inductor model.
inline std::optional<std::vector<CosTerm>> cos_terms(const CircuitModel& model) {
    using R = std::optional<std::vector<CosTerm>>;
    return std::visit([](const auto& v) -> R {
        using T = std::decay_t<decltype(v)>;
        std::vector<CosTerm> t;
        if constexpr (std::is_same_v<T, TwoCosine>) {
            if (v.A != 0.0) t.push_back({v.A, v.a1, v.a2 * v.phi_e, 0});
            if (v.B != 0.0) t.push_back({v.B, v.b1, v.b2 * v.phi_e, 1});
        } else if constexpr (std::is_same_v<T, SnailArray>) {
            const double M = v.M, N = v.N;
            t.push_back({-M * v.alpha * v.EJ, 1.0 / M, 0.0, 0});
            t.push_back({-M * N * v.EJ, 1.0 / (M * N), -v.phi_e / N, 1});
        } else if constexpr (std::is_same_v<T, SquidArray>) {
            const double M = v.M;
            t.push_back({-M * v.alpha * v.EJ, 1.0 / M, -v.ra * v.phi_dc, 0});
            t.push_back({-M * v.EJ, 1.0 / M, v.rb * v.phi_dc, 1});
        } else if constexpr (std::is_same_v<T, HigherHarmonics>) {
            for (std::size_t m = 0; m < v.A.size(); ++m)
                if (v.A[m] != 0.0) t.push_back({v.A[m], (m + 1.0) * v.a1, v.a2 * v.phi_e, 0});
            for (std::size_t m = 0; m < v.B.size(); ++m)
                if (v.B[m] != 0.0) t.push_back({v.B[m], (m + 1.0) * v.b1, v.b2 * v.phi_e, 1});
        } else {
            return std::nullopt;
        }
        return t;
    }, model);
}

namespace detail {

// cos(x + q*pi/2), exact in q.
template <class T>
T cos_shift(int q, T x) {
    switch (((q % 4) + 4) % 4) {
        case 0: return std::cos(x);
        case 1: return -std::sin(x);
        case 2: return -std::cos(x);
        default: return std::sin(x);
    }
}

// n-th derivative of a cosine sum at phi, restricted to one group if group >= 0.
// Accumulated in extended precision: near the minimum the odd derivatives
// are tiny differences of O(E_J) terms.
inline double cos_sum_derivative(const std::vector<CosTerm>& terms, int n, double phi, int group = -1) {
    long double s = 0;
    for (const auto& t : terms) {
        if (group >= 0 && t.group != group) continue;
        const long double k = t.k;
        s += static_cast<long double>(t.amp) * std::pow(k, n) * cos_shift(n, k * phi + static_cast<long double>(t.theta));
    }
    return static_cast<double>(s);
}

// Smallest common period of the cosine arguments.
inline double cos_sum_period(const std::vector<CosTerm>& terms) {
    double kmin = 0.0;
    for (const auto& t : terms)
        if (t.k != 0.0 && (kmin == 0.0 || std::fabs(t.k) < kmin)) kmin = std::fabs(t.k);
    if (kmin == 0.0) return units::two_pi;
    for (int q = 1; q <= 1024; ++q) {
        bool ok = true;
        for (const auto& t : terms) {
            const double r = q * std::fabs(t.k) / kmin;
            if (std::fabs(r - std::round(r)) > 1e-9 * std::max(1.0, r)) { ok = false; break; }
        }
        if (ok) return units::two_pi * q / kmin;
    }
    return units::two_pi * 64.0 / kmin;
}

inline double newton_refine(const std::function<double(double)>& d1, const std::function<double(double)>& d2,
                            double x, double scale, double tol) {
    for (int it = 0; it < 100; ++it) {
        const double g = d1(x);
        const double h = d2(x);
        if (std::fabs(g) < tol * scale) return x;
        if (!(h > 0.0)) throw Error(ErrorCode::NoMinimumFound, "non-convex point during Newton refinement");
        double step = g / h;
        x -= step;
        if (std::fabs(step) < 1e-15 * std::max(1.0, std::fabs(x)) && std::fabs(d1(x)) < 1e3 * tol * scale) return x;
    }
    if (std::fabs(d1(x)) < 1e3 * tol * scale) return x;
    throw Error(ErrorCode::NoMinimumFound, "Newton refinement did not converge");
}

inline double grid_minimum(const std::function<double(double)>& u, double lo, double hi, int points) {
    double best = lo;
    double ubest = u(lo);
    for (int i = 1; i < points; ++i) {
        const double x = lo + (hi - lo) * i / points;
        const double ux = u(x);
        if (ux < ubest) { ubest = ux; best = x; }
    }
    return best;
}

// Single-SNAIL potential U_N(s)/E_J and its derivatives.
struct SnailCell {
    double alpha;
    int N;
    double phi_e;
    double u(double s) const { return -alpha * std::cos(s) - N * std::cos((s - phi_e) / N); }
    // k-th derivative of f(s) = dU_N/ds = alpha sin s + sin((s - phi_e)/N)
    double f(int k, double s) const {
        return alpha * std::sin(s + k * units::pi / 2) + std::pow(1.0 / N, k) * std::sin((s - phi_e) / N + k * units::pi / 2);
    }
    double s_min(int grid_points = 4096) const {
        const double lo = phi_e - N * units::pi, hi = phi_e + N * units::pi;
        double s = grid_minimum([this](double x) { return u(x); }, lo, hi, grid_points);
        for (int it = 0; it < 100; ++it) {
            const double g = f(0, s), h = f(1, s);
            if (!(h > 0.0)) throw Error(ErrorCode::RootNotConverged, "SNAIL minimum not convex");
            const double step = g / h;
            s -= step;
            if (std::fabs(step) < 1e-15 * std::max(1.0, std::fabs(s))) return s;
        }
        if (std::fabs(f(0, s)) < 1e-12) return s;
        throw Error(ErrorCode::RootNotConverged, "SNAIL minimum did not converge");
    }
};

}  // namespace detail

// Potential energy U(phi) in rad/ns. For the stray-inductor model the
// internal SNAIL phase is solved from current conservation.
inline double potential(const CircuitModel& model, double phi) {
    if (auto t = cos_terms(model)) return detail::cos_sum_derivative(*t, 0, phi);
    const auto& v = std::get<SnailArrayStrayL>(model);
    detail::SnailCell cell{v.alpha, v.N, v.phi_e};
    const double s0 = cell.s_min();
    double s = phi / v.M;
    if (std::fabs(phi - v.M * s0) < 10.0) s = s0 + (phi - v.M * s0) / v.M;
    for (int it = 0; it < 200; ++it) {
        const double g = cell.f(0, s) + v.xJ * (v.M * s - phi);
        const double h = cell.f(1, s) + v.xJ * v.M;
        const double step = g / h;
        s -= step;
        if (std::fabs(step) < 1e-15 * std::max(1.0, std::fabs(s))) break;
    }
    const double lin = phi - v.M * s;
    return v.EJ * (v.M * cell.u(s) + 0.5 * v.xJ * lin * lin);
}

struct MinimumOptions {
    int grid_points = 4096;
    double gradient_tol = 1e-12;  // |dU/dphi| < tol * E_J
};

// Global minimum over one fundamental period.
inline double find_minimum(const CircuitModel& model, const MinimumOptions& opt = {}) {
    validate(model);
    const double ej = energy_scale(model);
    if (auto t = cos_terms(model)) {
        const auto& terms = *t;
        const double period = detail::cos_sum_period(terms);
        auto u = [&](double x) { return detail::cos_sum_derivative(terms, 0, x); };
        auto d1 = [&](double x) { return detail::cos_sum_derivative(terms, 1, x); };
        auto d2 = [&](double x) { return detail::cos_sum_derivative(terms, 2, x); };
        const double x0 = detail::grid_minimum(u, -0.5 * period, 0.5 * period, opt.grid_points);
        const double phi0 = detail::newton_refine(d1, d2, x0, ej, opt.gradient_tol);
        if (!(d2(phi0) > 1e-12 * ej)) throw Error(ErrorCode::DegenerateMinimum, "vanishing curvature at minimum");
        return phi0;
    }
    const auto& v = std::get<SnailArrayStrayL>(model);
    detail::SnailCell cell{v.alpha, v.N, v.phi_e};
    return v.M * cell.s_min(opt.grid_points);
}

// Taylor coefficients a_1..a_nmax of phi_s(phi) about the minimum, from
// repeated differentiation of the current-conservation identity.
inline std::vector<double> stray_phase_taylor(const SnailArrayStrayL& v, double s0, int nmax) {
    detail::SnailCell cell{v.alpha, v.N, v.phi_e};
    std::vector<double> fk(static_cast<std::size_t>(nmax) + 1);
    for (int k = 0; k <= nmax; ++k) fk[static_cast<std::size_t>(k)] = cell.f(k, s0);
    std::vector<double> a(static_cast<std::size_t>(nmax) + 1, 0.0);
    // pw[k][n]: coefficient of t^n in (phi_s - s0)^k
    std::vector<std::vector<double>> pw(static_cast<std::size_t>(nmax) + 1, std::vector<double>(static_cast<std::size_t>(nmax) + 1, 0.0));
    const double den = fk[1] + v.xJ * v.M;
    double fact = 1.0;
    std::vector<double> inv_fact(static_cast<std::size_t>(nmax) + 1, 1.0);
    for (int k = 1; k <= nmax; ++k) { fact *= k; inv_fact[static_cast<std::size_t>(k)] = 1.0 / fact; }
    for (int n = 1; n <= nmax; ++n) {
        double s = 0.0;
        for (int k = 2; k <= n; ++k) {
            double val = 0.0;
            for (int i = 1; i <= n - k + 1; ++i) val += a[static_cast<std::size_t>(i)] * pw[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(n - i)];
            pw[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)] = val;
            s += fk[static_cast<std::size_t>(k)] * inv_fact[static_cast<std::size_t>(k)] * val;
        }
        a[static_cast<std::size_t>(n)] = ((n == 1 ? v.xJ : 0.0) - s) / den;
        pw[1][static_cast<std::size_t>(n)] = a[static_cast<std::size_t>(n)];
    }
    return a;
}

// c_0..c_nmax for the stray-inductor model (c_0 = U/E_J at the minimum).
inline std::vector<double> stray_inductor_coeffs(const SnailArrayStrayL& v, int nmax) {
    validate(CircuitModel{v});
    detail::SnailCell cell{v.alpha, v.N, v.phi_e};
    const double s0 = cell.s_min();
    const auto a = stray_phase_taylor(v, s0, std::max(nmax, 2));
    std::vector<double> c(static_cast<std::size_t>(std::max(nmax, 2)) + 1, 0.0);
    c[0] = v.M * cell.u(s0);
    c[1] = 0.0;
    c[2] = v.xJ * (1.0 - v.M * a[1]);
    double fact = 1.0;  // (n-1)!
    for (int n = 3; n <= nmax; ++n) {
        fact *= (n - 1);
        c[static_cast<std::size_t>(n)] = -v.M * v.xJ * fact * a[static_cast<std::size_t>(n - 1)];
    }
    c.resize(static_cast<std::size_t>(nmax) + 1);
    return c;
}

// c_0..c_nmax = d^n U / dphi^n at phi0, divided by the energy scale.
inline std::vector<double> nonlinear_coeffs(const CircuitModel& model, double phi0, int nmax) {
    if (nmax < 2) throw Error(ErrorCode::InvalidArgument, "n_max must be at least 2");
    if (auto t = cos_terms(model)) {
        const double ej = energy_scale(model);
        std::vector<double> c(static_cast<std::size_t>(nmax) + 1);
        for (int n = 0; n <= nmax; ++n) c[static_cast<std::size_t>(n)] = detail::cos_sum_derivative(*t, n, phi0) / ej;
        return c;
    }
    return stray_inductor_coeffs(std::get<SnailArrayStrayL>(model), nmax);
}

// Per-group coefficients c^{(g)}_n used by flux drives.
inline std::vector<std::vector<double>> group_coeffs(const CircuitModel& model, double phi0, int nmax) {
    auto t = cos_terms(model);
    if (!t) return {nonlinear_coeffs(model, phi0, nmax)};
    const double ej = energy_scale(model);
    std::vector<std::vector<double>> out(2, std::vector<double>(static_cast<std::size_t>(nmax) + 1, 0.0));
    for (int g = 0; g < 2; ++g)
        for (int n = 0; n <= nmax; ++n)
            out[static_cast<std::size_t>(g)][static_cast<std::size_t>(n)] = detail::cos_sum_derivative(*t, n, phi0, g) / ej;
    return out;
}

struct ModeFrame {
    double phi0 = 0;
    std::vector<double> c;                     // c_0..c_nmax
    std::vector<std::vector<double>> c_group;  // per cosine group (flux drives)
    double EJ = 0;
    double EC = 0;
    double omega0 = 0;
    double phi_zpf = 0;
    double n_zpf = 0;
};

inline ModeFrame mode_frame(const CircuitModel& model, double EC, int nmax = 26) {
    if (!(EC > 0.0)) throw Error(ErrorCode::InvalidArgument, "E_C must be positive");
    ModeFrame f;
    f.phi0 = find_minimum(model);
    f.c = nonlinear_coeffs(model, f.phi0, nmax);
    f.c_group = group_coeffs(model, f.phi0, nmax);
    f.EJ = energy_scale(model);
    f.EC = EC;
    const double c2 = f.c[2];
    if (!(c2 > 1e-12)) throw Error(ErrorCode::DegenerateMinimum, "c_2 is not positive");
    f.omega0 = std::sqrt(8.0 * EC * f.EJ * c2);
    f.phi_zpf = std::pow(2.0 * EC / (f.EJ * c2), 0.25);
    f.n_zpf = 0.5 / f.phi_zpf;
    return f;
}

// Effective Josephson energy of one SQUID and the minimum phase offset lambda.
inline double squid_effective_ej(const SquidArray& s) {
    return s.EJ * std::sqrt(1.0 + s.alpha * s.alpha + 2.0 * s.alpha * std::cos(s.phi_dc));
}

inline double squid_lambda(const SquidArray& s) {
    return std::atan2(s.alpha * std::sin(s.ra * s.phi_dc) - std::sin(s.rb * s.phi_dc),
                      s.alpha * std::cos(s.ra * s.phi_dc) + std::cos(s.rb * s.phi_dc));
}

}  // namespace supco
