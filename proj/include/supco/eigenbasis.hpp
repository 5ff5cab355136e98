#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "supco/bessel.hpp"
#include "supco/circuit.hpp"
#include "supco/errors.hpp"
#include "supco/sc.hpp"
#include "supco/units.hpp"

namespace supco {

enum class Basis { Charge, Grid };

struct EigenOptions {
    Basis basis = Basis::Grid;
    int dim = 512;         // grid points, or charge states 2*cutoff+1
    double n_g = 0.0;      // charge basis only
    double drive_ratio = 0.0;  // Omega_d / omega_d
    double flux_ac0 = -1.0;    // >= 0 selects a flux drive (argument 2 phi_ac0 a2)
};

struct EigenFrame {
    Basis basis = Basis::Grid;
    double EC = 0, n_g = 0;
    std::vector<CosTerm> terms;  // bare potential
    std::vector<double> arg;     // Bessel argument per term
    std::vector<double> x;       // grid points (grid basis)
    int cutoff = 0;              // charge basis
    Eigen::VectorXd energies;
    Eigen::MatrixXcd vectors;    // columns are eigenstates

    int dim() const { return static_cast<int>(energies.size()); }
};

namespace detail {

inline bool is_integer(double k) { return std::fabs(k - std::round(k)) < 1e-12; }

// Second-derivative periodic pseudospectral matrix on N points over period P.
inline Eigen::MatrixXd spectral_d2(int N, double P) {
    const double h = units::two_pi / N;
    const double scale = std::pow(units::two_pi / P, 2);
    Eigen::MatrixXd D(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (i == j) {
                D(i, j) = -units::pi * units::pi / (3.0 * h * h) - 1.0 / 6.0;
            } else {
                const double s = std::sin((i - j) * h / 2.0);
                D(i, j) = -(((i - j) % 2 == 0) ? 1.0 : -1.0) / (2.0 * s * s);
            }
            D(i, j) *= scale;
        }
    return D;
}

inline double term_argument(const CosTerm& t, const CircuitModel& model, const EigenOptions& opt) {
    if (opt.flux_ac0 >= 0.0) {
        // theta = a2 phi_e: the flux drive enters through a2.
        double a2 = 0.0;
        std::visit([&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, TwoCosine> || std::is_same_v<T, HigherHarmonics>) a2 = t.group == 0 ? v.a2 : v.b2;
            else if constexpr (std::is_same_v<T, SnailArray>) a2 = t.group == 0 ? 0.0 : -1.0 / v.N;
            else if constexpr (std::is_same_v<T, SquidArray>) a2 = t.group == 0 ? -v.ra : v.rb;
        }, model);
        return 2.0 * opt.flux_ac0 * a2;
    }
    return t.k * opt.drive_ratio;
}

}  // namespace detail

// Eigenpairs of 4 E_C (n - n_g)^2 + sum_j A_j J_0(arg_j) cos(k_j phi + theta_j).
inline EigenFrame diagonalize_static(const CircuitModel& model, double EC, const EigenOptions& opt = {}) {
    auto t = cos_terms(model);
    if (!t) throw Error(ErrorCode::UnsupportedModel, "eigenbasis needs a cosine-sum potential");
    if (!(EC > 0.0)) throw Error(ErrorCode::InvalidArgument, "E_C must be positive");
    EigenFrame fr;
    fr.basis = opt.basis;
    fr.EC = EC;
    fr.terms = *t;
    std::vector<double> amp;
    for (const auto& term : fr.terms) {
        fr.arg.push_back(detail::term_argument(term, model, opt));
        amp.push_back(term.amp * bessel_j(0, fr.arg.back()));
    }

    if (opt.basis == Basis::Charge) {
        for (const auto& term : fr.terms)
            if (!detail::is_integer(term.k)) throw Error(ErrorCode::BasisMismatch, "charge basis needs integer cosine arguments");
        if (opt.dim < 3 || opt.dim % 2 == 0) throw Error(ErrorCode::InvalidArgument, "charge basis needs odd dim >= 3");
        fr.n_g = opt.n_g;
        fr.cutoff = opt.dim / 2;
        const int D = opt.dim;
        Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(D, D);
        for (int i = 0; i < D; ++i) {
            const double n = i - fr.cutoff - opt.n_g;
            H(i, i) = 4.0 * EC * n * n;
        }
        for (std::size_t j = 0; j < fr.terms.size(); ++j) {
            const int k = static_cast<int>(std::lround(fr.terms[j].k));
            const std::complex<double> c = 0.5 * amp[j] * std::polar(1.0, fr.terms[j].theta);
            for (int i = 0; i < D; ++i) {
                const int i2 = i + k;  // e^{ik phi}|n> = |n+k>
                if (i2 < 0 || i2 >= D) continue;
                H(i2, i) += c;
                H(i, i2) += std::conj(c);
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
        fr.energies = es.eigenvalues();
        fr.vectors = es.eigenvectors();
        return fr;
    }

    const int N = opt.dim;
    if (N < 8 || N % 2 != 0) throw Error(ErrorCode::InvalidArgument, "grid basis needs even dim >= 8");
    const double phi0 = find_minimum(model);
    bool compact = true;
    for (const auto& term : fr.terms) compact = compact && detail::is_integer(term.k);
    double P = units::two_pi, lo = -units::pi;
    if (!compact) {
        P = detail::cos_sum_period(fr.terms);
        lo = phi0 - P / 2.0;
    }
    fr.x.resize(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) fr.x[static_cast<std::size_t>(i)] = lo + P * i / N;
    Eigen::MatrixXd H = -4.0 * EC * detail::spectral_d2(N, P);
    for (int i = 0; i < N; ++i) {
        double v = 0.0;
        for (std::size_t j = 0; j < fr.terms.size(); ++j)
            v += amp[j] * std::cos(fr.terms[j].k * fr.x[static_cast<std::size_t>(i)] + fr.terms[j].theta);
        H(i, i) += v;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    fr.energies = es.eigenvalues();
    fr.vectors = es.eigenvectors().cast<std::complex<double>>();
    return fr;
}

// <a| f(k phi + theta) |b> with f = cos (sine = false) or sin.
inline std::complex<double> trig_element(const EigenFrame& fr, double k, double theta, bool sine, int a, int b) {
    if (a < 0 || b < 0 || a >= fr.dim() || b >= fr.dim()) throw Error(ErrorCode::InvalidArgument, "state index outside basis");
    const auto va = fr.vectors.col(a), vb = fr.vectors.col(b);
    std::complex<double> s = 0.0;
    if (fr.basis == Basis::Grid) {
        for (int i = 0; i < fr.dim(); ++i) {
            const double arg = k * fr.x[static_cast<std::size_t>(i)] + theta;
            s += std::conj(va(i)) * (sine ? std::sin(arg) : std::cos(arg)) * vb(i);
        }
        return s;
    }
    if (!detail::is_integer(k)) throw Error(ErrorCode::BasisMismatch, "charge basis needs integer cosine arguments");
    const int kk = static_cast<int>(std::lround(k));
    const std::complex<double> ep = std::polar(1.0, theta), em = std::conj(ep);
    const int D = fr.dim();
    for (int i = 0; i < D; ++i) {
        std::complex<double> up = 0.0, dn = 0.0;
        if (i + kk >= 0 && i + kk < D) up = std::conj(va(i + kk)) * vb(i);
        if (i - kk >= 0 && i - kk < D) dn = std::conj(va(i - kk)) * vb(i);
        s += sine ? (ep * up - em * dn) / std::complex<double>(0.0, 2.0) : 0.5 * (ep * up + em * dn);
    }
    return s;
}

// Eigenbasis SC between states a and b: sum_j A_j J_p(arg_j) times
// <a|cos(.)|b> for even p or i<a|sin(.)|b> for odd p.
inline std::complex<double> sc_eigen(const EigenFrame& fr, int a, int b, int p) {
    std::complex<double> s = 0.0;
    for (std::size_t j = 0; j < fr.terms.size(); ++j) {
        const auto& t = fr.terms[j];
        const double jp = bessel_j(p, fr.arg[j]);
        if (jp == 0.0) continue;
        const bool odd = p % 2 != 0;
        auto e = trig_element(fr, t.k, t.theta, odd, a, b);
        if (odd) e *= std::complex<double>(0.0, 1.0);
        s += t.amp * jp * e;
    }
    return s;
}

// Harmonic-oscillator reference: <m| cos(k(phi0 + phi_zpf (a + a^dag)) + theta) |n>.
inline double oscillator_cos_element(double k, double theta, double phi0, double phi_zpf, int m, int n) {
    if (m > n) std::swap(m, n);
    const double alpha = k * phi_zpf;
    const int d = n - m;
    double lf = 0.0;
    for (int i = m + 1; i <= n; ++i) lf += std::log(static_cast<double>(i));
    // <m|e^{i alpha X}|n> = e^{-alpha^2/2} sqrt(m!/n!) (i alpha)^d L_m^{(d)}(alpha^2)
    const double mag = std::exp(-0.5 * alpha * alpha - 0.5 * lf) * std::pow(alpha, d) * std::assoc_laguerre(m, d, alpha * alpha);
    const double x = k * phi0 + theta;
    // Re[e^{ix} i^d mag]
    return mag * detail::cos_shift(d, x);
}

}  // namespace supco
