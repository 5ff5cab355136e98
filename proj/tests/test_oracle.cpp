#include <gtest/gtest.h>

#include <cmath>

#include "supco/oracle/oracle.hpp"
#include "supco/oracle/verify.hpp"
#include "supco/sc.hpp"
#include "supco/units.hpp"

using namespace supco;

namespace {

const TwoCosine kTransmon{-units::from_ghz(20.0), 0, 1, 0, 0, 0, 0, units::from_ghz(20.0)};
const double kEC = units::from_ghz(0.3);

}  // namespace

TEST(Oracle, DrivenHamiltonianIsHermitian) {
    const SnailArray s{2, 3, 0.11, units::from_ghz(20.0), units::flux_to_phase(0.4)};
    const auto f = mode_frame(s, units::from_ghz(0.1), 10);
    const auto H = oracle::build_driven_hamiltonian(s, f, 0.7, 0.3, 40);
    EXPECT_LE((H.m - H.m.transpose()).cwiseAbs().maxCoeff(), 1e-12 * f.EJ);
}

TEST(Oracle, MatchesClosedFormForTransmon) {
    const auto f = mode_frame(kTransmon, kEC, 60);
    const auto r = oracle::extract_sc(kTransmon, f, 0.5);
    for (const auto& v : r.values) {
        const double c = sc_closed(kTransmon, f, 0.5, {v.n, v.l, v.p}).value;
        EXPECT_LE(std::fabs(v.value - c), 1e-6 * std::max(std::fabs(c), 1e-12 * f.EJ)) << v.n << v.l << v.p;
    }
    EXPECT_LT(r.asymmetry, 1e-12 * f.EJ);
}

TEST(Oracle, ParityZerosForSymmetricPotential) {
    const auto f = mode_frame(kTransmon, kEC, 60);
    const auto r = oracle::extract_sc(kTransmon, f, 0.0);
    for (const auto& v : r.values)
        if ((v.l + v.p) % 2) EXPECT_LE(std::fabs(v.value), 1e-10 * f.EJ);
}

TEST(Oracle, UndrivenHarmonicsVanish) {
    const SnailArray s{1, 3, 0.11, units::from_ghz(20.0), units::flux_to_phase(0.32)};
    const auto f = mode_frame(s, units::from_ghz(0.1), 20);
    const auto r = oracle::extract_sc(s, f, 0.0);
    for (const auto& v : r.values)
        if (v.p > 0) EXPECT_LE(std::fabs(v.value), 1e-12 * f.EJ);
}

TEST(Oracle, LinearDisplacementTermMatchesSeries) {
    const SnailArray s{1, 3, 0.11, units::from_ghz(20.0), units::flux_to_phase(0.32)};
    const auto f = mode_frame(s, units::from_ghz(0.1), 44);
    const double c = oracle::extract_sc(s, f, 0.0).at(0, 1, 0);
    EXPECT_GT(std::fabs(c), 1e-4 * f.EJ * std::pow(f.phi_zpf, 3));
    EXPECT_NEAR(c, sc_series(f, 0.0, {0, 1, 0}, 40).value, 1e-8 * std::fabs(c));
}

TEST(Oracle, TruncationRobustness) {
    const SquidArray s{3, 0.7, units::from_ghz(20.0), 0.3, 0.7, 1.0};
    const auto f = mode_frame(s, kEC, 20);
    oracle::OracleOptions a, b;
    b.dim = 2 * a.dim;
    const auto ra = oracle::extract_sc(s, f, 1.5, a), rb = oracle::extract_sc(s, f, 1.5, b);
    for (std::size_t i = 0; i < ra.values.size(); ++i)
        EXPECT_LE(std::fabs(ra.values[i].value - rb.values[i].value), 1e-8 * std::max(std::fabs(rb.values[i].value), 1e-10 * f.EJ));
}

TEST(Oracle, StrayInductorMatchesSeries) {
    const SnailArrayStrayL v{2, 3, 0.0739, units::from_ghz(30.0), units::flux_to_phase(0.25), 0.27};
    const auto f = mode_frame(v, units::from_ghz(0.15), 44);
    oracle::OracleOptions o;
    o.nl_max = 4;
    o.p_max = 2;
    const auto r = oracle::extract_sc(v, f, 0.5, o);
    for (const auto& x : r.values) {
        const double s = sc_series(f, 0.5, {x.n, x.l, x.p}, 40).value;
        EXPECT_LE(std::fabs(x.value - s), 1e-5 * std::max(std::fabs(s), 1e-9 * f.EJ)) << x.n << x.l << x.p;
    }
}

TEST(Oracle, ConditionAndArgumentChecks) {
    const auto f = mode_frame(kTransmon, kEC, 20);
    const auto r = oracle::extract_sc(kTransmon, f, 0.0);
    EXPECT_LT(r.condition, 10.0);
    oracle::OracleOptions bad;
    bad.n_phase = 4;
    EXPECT_THROW(oracle::extract_sc(kTransmon, f, 0.0, bad), Error);
    oracle::OracleOptions strict;
    strict.condition_limit = 1.0;
    EXPECT_THROW(oracle::extract_sc(kTransmon, f, 0.0, strict), Error);
}

TEST(Oracle, StandardMatrixPasses) {
    for (const auto& c : oracle::standard_matrix())
        for (double pt : oracle::standard_drives()) EXPECT_TRUE(oracle::verify_case(c, pt).pass) << c.name << " " << pt;
}
