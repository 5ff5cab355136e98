#pragma once

// Brute-force SC extraction on a truncated Fock space. Deliberately shares
// no code with the series and closed-form engines.

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <vector>

#include "supco/circuit.hpp"
#include "supco/errors.hpp"

namespace supco::oracle {

struct FockOperator {
    int dim = 0;
    Eigen::MatrixXd m;
};

struct OracleOptions {
    int dim = 60;
    int n_phase = 64;
    int nl_max = 6;  // max 2n+l
    int p_max = 3;
    double condition_limit = 1e10;
};

struct OracleValue {
    int n, l, p;
    double value;
};

struct OracleResult {
    std::vector<OracleValue> values;
    double condition = 0;
    double asymmetry = 0;  // max |<m|H_p|m+l> - <m+l|H_p|m>|

    double at(int n, int l, int p) const {
        for (const auto& v : values)
            if (v.n == n && v.l == l && v.p == p) return v.value;
        throw Error(ErrorCode::InvalidArgument, "index not extracted");
    }
};

namespace detail {

// Internal arithmetic runs in extended precision so that entries which vanish
// by accident (to roundoff of E_J) are resolved below the double floor.
using real = long double;
using VecR = Eigen::Matrix<real, Eigen::Dynamic, 1>;
using MatR = Eigen::Matrix<real, Eigen::Dynamic, Eigen::Dynamic>;

// U(phi) evaluated pointwise, stray-inductor case by Newton on the
// internal SNAIL phase continued from the previous point.
inline std::function<real(real)> scalar_potential(const CircuitModel& model) {
    if (std::holds_alternative<SnailArrayStrayL>(model)) {
        const auto v = std::get<SnailArrayStrayL>(model);
        const real M = v.M, N = v.N, a = v.alpha, pe = v.phi_e, xJ = v.xJ, EJ = v.EJ;
        auto dU = [=](real s) { return a * std::sin(s) + std::sin((s - pe) / N); };
        auto d2U = [=](real s) { return a * std::cos(s) + std::cos((s - pe) / N) / N; };
        const real phi0 = find_minimum(model);
        return [=](real phi) {
            real s = phi0 / M + (phi - phi0) / (M + 1 / xJ);
            for (int it = 0; it < 200; ++it) {
                const real g = dU(s) + xJ * (M * s - phi);
                const real step = g / (d2U(s) + xJ * M);
                s -= step;
                if (std::fabs(step) < 1e-19L * std::max<real>(1, std::fabs(s))) break;
            }
            const real u = -a * std::cos(s) - N * std::cos((s - pe) / N);
            const real lin = phi - M * s;
            return EJ * (M * u + xJ * lin * lin / 2);
        };
    }
    const auto terms = *cos_terms(model);
    return [terms](real phi) {
        real u = 0;
        for (const auto& t : terms) u += static_cast<real>(t.amp) * std::cos(static_cast<real>(t.k) * phi + static_cast<real>(t.theta));
        return u;
    };
}

struct Spectrum {
    VecR x;  // eigenvalues of a + a^dagger
    MatR V;
};

inline Spectrum position_spectrum(int dim) {
    MatR X = MatR::Zero(dim, dim);
    for (int m = 0; m + 1 < dim; ++m) X(m, m + 1) = X(m + 1, m) = std::sqrt(static_cast<real>(m + 1));
    Eigen::SelfAdjointEigenSolver<MatR> es(X);
    return {es.eigenvalues(), es.eigenvectors()};
}

// Nonlinear part of U at the displaced argument: U(phi0 + x) minus its
// Taylor polynomial of degree 2 about phi0.
// First and second derivative of U at phi0, taken from the cosine sum in
// extended precision; the stray-inductor model falls back to the frame.
inline std::pair<real, real> taylor_12(const CircuitModel& model, const ModeFrame& f) {
    const auto terms = cos_terms(model);
    if (!terms) return {static_cast<real>(f.EJ) * f.c[1], static_cast<real>(f.EJ) * f.c[2]};
    real u1 = 0, u2 = 0;
    for (const auto& t : *terms) {
        const real k = t.k, x = k * static_cast<real>(f.phi0) + static_cast<real>(t.theta);
        u1 -= static_cast<real>(t.amp) * k * std::sin(x);
        u2 -= static_cast<real>(t.amp) * k * k * std::cos(x);
    }
    return {u1, u2};
}

inline real nonlinear_part(const std::function<real(real)>& U, real phi0, real u0, real u1, real u2, real x) {
    return U(phi0 + x) - u0 - u1 * x - u2 * x * x / 2;
}

}  // namespace detail

inline FockOperator build_driven_hamiltonian(const CircuitModel& model, const ModeFrame& f, double pi_tilde,
                                             double phase, int dim) {
    using detail::real;
    const auto U = detail::scalar_potential(model);
    const auto sp = detail::position_spectrum(dim);
    const real phi0 = f.phi0, u0 = U(phi0);
    const auto [u1, u2] = detail::taylor_12(model, f);
    detail::VecR g(dim);
    for (int i = 0; i < dim; ++i)
        g(i) = detail::nonlinear_part(U, phi0, u0, u1, u2, f.phi_zpf * sp.x(i) + static_cast<real>(pi_tilde) * std::cos(static_cast<real>(phase)));
    const detail::MatR H = sp.V * g.asDiagonal() * sp.V.transpose();
    return {dim, H.cast<double>()};
}

inline OracleResult extract_sc(const CircuitModel& model, const ModeFrame& f, double pi_tilde, const OracleOptions& opt = {}) {
    if (opt.n_phase < 2 * opt.p_max + 2) throw Error(ErrorCode::InvalidArgument, "n_phase must be at least 2 p_max + 2");
    if (opt.dim < 4 * opt.nl_max) throw Error(ErrorCode::InvalidArgument, "dim must be at least 4 nl_max");
    const int dim = opt.dim;
    const int n_max = opt.nl_max / 2;
    const int rows = 2 * n_max + 4;
    if (rows + opt.nl_max >= dim) throw Error(ErrorCode::InvalidArgument, "dim too small for the requested rows");

    using detail::real;
    const real two_pi = 2 * std::acos(static_cast<real>(-1));
    const auto U = detail::scalar_potential(model);
    const auto sp = detail::position_spectrum(dim);
    const real phi0 = f.phi0, u0 = U(phi0), zpf = f.phi_zpf, pt = pi_tilde;
    const auto [u1, u2] = detail::taylor_12(model, f);

    // Sample the nonlinear part on the eigenvalue grid for every phase.
    std::vector<detail::VecR> samples(static_cast<std::size_t>(opt.n_phase), detail::VecR(dim));
    for (int r = 0; r < opt.n_phase; ++r) {
        const real psi = two_pi * r / opt.n_phase;
        for (int i = 0; i < dim; ++i)
            samples[static_cast<std::size_t>(r)](i) = detail::nonlinear_part(U, phi0, u0, u1, u2, zpf * sp.x(i) + pt * std::cos(psi));
    }

    // z_m = sum_{n<=m} C_n / (m-n)!
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(rows, rows);
    for (int m = 0; m < rows; ++m) {
        double fact = 1.0;
        for (int k = 0; k <= m; ++k) {
            if (k > 0) fact *= k;
            L(m, m - k) = 1.0 / fact;
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(L);
    const auto sv = svd.singularValues();
    OracleResult out;
    out.condition = sv(0) / sv(sv.size() - 1);
    if (out.condition > opt.condition_limit) throw Error(ErrorCode::IllConditioned, "normal-ordering system is ill-conditioned");

    const detail::MatR LR = L.cast<real>();
    auto log_fact = [](int n) { return std::lgamma(static_cast<real>(n + 1)); };
    for (int p = 0; p <= opt.p_max; ++p) {
        detail::VecR gp = detail::VecR::Zero(dim);
        for (int r = 0; r < opt.n_phase; ++r) {
            const real psi = two_pi * r / opt.n_phase;
            const auto& s = samples[static_cast<std::size_t>(r)];
            gp += (p == 0 ? s : detail::VecR(s - samples[0])) * std::cos(p * psi);
        }
        gp /= static_cast<real>(opt.n_phase);
        const detail::MatR Hp = sp.V * gp.asDiagonal() * sp.V.transpose();
        for (int l = 0; l <= opt.nl_max; ++l) {
            detail::VecR z(rows);
            for (int m = 0; m < rows; ++m) {
                const real y = Hp(m, m + l);
                out.asymmetry = std::max(out.asymmetry, static_cast<double>(std::fabs(y - Hp(m + l, m))));
                z(m) = y * std::exp(-(log_fact(m) + log_fact(m + l)) / 2);
            }
            const detail::VecR C = LR.triangularView<Eigen::Lower>().solve(z);
            for (int n = 0; 2 * n + l <= opt.nl_max; ++n) out.values.push_back({n, l, p, static_cast<double>(C(n))});
        }
    }
    return out;
}

}  // namespace supco::oracle
