#pragma once

#include <cmath>
#include <vector>

namespace supco {

// Integer-order Bessel functions of the first kind, J_0..J_pmax at a single
// argument, by Miller's backward recurrence normalized with
// J_0 + 2 sum_k J_2k = 1.
template <class T = double>
std::vector<T> bessel_j_all(int pmax, T x) {
    std::vector<T> out(static_cast<std::size_t>(pmax) + 1, T(0));
    if (x == T(0)) {
        out[0] = 1.0;
        return out;
    }
    const T ax = std::fabs(x);
    if (ax < T(1e-6)) {
        const T h = x / 2;
        T term = 1;
        for (int p = 0; p <= pmax; ++p) {
            if (p > 0) term *= h / p;
            out[static_cast<std::size_t>(p)] = term * (1 - h * h / (p + 1) + h * h * h * h / (T(2) * (p + 1) * (p + 2)));
        }
        return out;
    }
    const int base = std::max(pmax, static_cast<int>(ax));
    int start = base + 20 + static_cast<int>(std::sqrt(40.0 * (base + 1)));
    start += start % 2;

    std::vector<T> j(static_cast<std::size_t>(start) + 2, T(0));
    T jp1 = 0;
    T jc = T(1e-300);
    T norm = 0;
    for (int k = start; k >= 0; --k) {
        j[static_cast<std::size_t>(k)] = jc;
        if (k % 2 == 0) norm += (k == 0 ? jc : 2 * jc);
        if (k == 0) break;
        const T jm1 = T(2 * k) / ax * jc - jp1;
        jp1 = jc;
        jc = jm1;
        if (std::fabs(jc) > T(1e250)) {
            for (int i = k; i <= start; ++i) j[static_cast<std::size_t>(i)] *= T(1e-250);
            jp1 *= T(1e-250);
            jc *= T(1e-250);
            norm *= T(1e-250);
        }
    }
    for (int p = 0; p <= pmax; ++p) {
        T v = j[static_cast<std::size_t>(p)] / norm;
        if (x < T(0) && (p % 2 == 1)) v = -v;
        out[static_cast<std::size_t>(p)] = v;
    }
    return out;
}

template <class T = double>
T bessel_j(int p, T x) {
    if (p < 0) {
        const T v = bessel_j(-p, x);
        return ((-p) % 2 == 0) ? v : -v;
    }
    if (x == T(0)) return p == 0 ? T(1) : T(0);
    return bessel_j_all(p, x)[static_cast<std::size_t>(p)];
}

// First positive zero of J_0, refined by Newton iteration.
inline double bessel_j0_first_zero() {
    double z = 2.404825557695773;
    for (int i = 0; i < 8; ++i) {
        const auto j = bessel_j_all(1, z);
        z += j[0] / j[1];
    }
    return z;
}

}  // namespace supco
