#pragma once

#include <string>
#include <vector>

#include "supco/circuit.hpp"
#include "supco/oracle/oracle.hpp"
#include "supco/sc.hpp"
#include "supco/units.hpp"

namespace supco::oracle {

struct VerifyCase {
    std::string name;
    CircuitModel model;
    double EC;
};

// Transmon, SNAIL M in {1,2}, SQUID M in {1,3}.
inline std::vector<VerifyCase> standard_matrix() {
    const double EJ = units::from_ghz(20.0);
    return {
        {"transmon", TwoCosine{-EJ, 0, 1, 0, 0, 0, 0, EJ}, units::from_ghz(0.3)},
        {"snail_M1", SnailArray{1, 3, 0.11, EJ, units::flux_to_phase(0.32)}, units::from_ghz(0.1)},
        {"snail_M2", SnailArray{2, 3, 0.11, EJ, units::flux_to_phase(0.40)}, units::from_ghz(0.1)},
        {"squid_M1", SquidArray{1, 0.5, EJ, 0.5, 0.5, 0.6}, units::from_ghz(0.3)},
        {"squid_M3", SquidArray{3, 0.7, EJ, 0.3, 0.7, 1.0}, units::from_ghz(0.3)},
    };
}

inline const std::vector<double>& standard_drives() {
    static const std::vector<double> d = {0.0, 0.5, 1.5};
    return d;
}

struct VerifyOutcome {
    std::string name;
    double pi_tilde = 0;
    double max_error = 0;  // |oracle - reference| / max(|reference|, floor)
    int worst_n = 0, worst_l = 0, worst_p = 0;
    bool pass = false;
};

// Reference is the closed form for symmetric circuits, series otherwise.
// Relative tolerance with an absolute floor of floor_rel * E_J.
inline VerifyOutcome verify_case(const VerifyCase& c, double pi_tilde, const OracleOptions& opt = {}, double tol = 1e-6,
                                 double floor_rel = 1e-12) {
    const auto f = mode_frame(c.model, c.EC, 60);
    const auto res = extract_sc(c.model, f, pi_tilde, opt);
    VerifyOutcome out;
    out.name = c.name;
    out.pi_tilde = pi_tilde;
    for (const auto& v : res.values) {
        const ScIndex idx{v.n, v.l, v.p};
        const double ref = is_symmetric(c.model) ? sc_closed(c.model, f, pi_tilde, idx).value : sc_series(f, pi_tilde, idx, 40).value;
        const double scale = std::max(std::fabs(ref), floor_rel * f.EJ);
        const double err = std::fabs(v.value - ref) / scale;
        if (err > out.max_error) {
            out.max_error = err;
            out.worst_n = v.n;
            out.worst_l = v.l;
            out.worst_p = v.p;
        }
    }
    out.pass = out.max_error <= tol;
    return out;
}

}  // namespace supco::oracle
