#include <gtest/gtest.h>

#include <cmath>

#include "supco/circuit.hpp"
#include "supco/sc.hpp"
#include "supco/units.hpp"

using namespace supco;

namespace {

double rel(double a, double b, double floor) { return std::fabs(a - b) / std::max(std::fabs(b), floor); }

const SnailArray kSnail{2, 3, 0.11, 100.0, units::flux_to_phase(0.4)};
const SquidArray kSquid{2, 0.6, 100.0, 0.3, 0.7, 0.9};

}  // namespace

TEST(Supercoefficient, SeriesConvergesToClosedForm) {
    for (const CircuitModel& m : {CircuitModel{kSnail}, CircuitModel{kSquid}}) {
        const auto f = mode_frame(m, 1.0, 44);
        for (double pt : {0.0, 0.7, 1.8})
            for (const auto& idx : index_set(6, 3)) {
                const double s = sc_series(f, pt, idx, 40).value;
                const double c = sc_closed(m, f, pt, idx).value;
                // Symmetry zeros come out as ~1e-19 E_J rounding noise in both engines.
                EXPECT_LE(rel(s, c, 1e-9 * f.EJ), 1e-9) << idx.n << idx.l << idx.p << " pt=" << pt;
            }
    }
}

TEST(Supercoefficient, LowestShellFormula) {
    const auto f = mode_frame(kSnail, 1.0, 8);
    // Only S = 3 survives for (0,3,0) at S_max = 3.
    EXPECT_NEAR(sc_series(f, 0.0, {0, 3, 0}, 3).value, f.EJ * f.c[3] * std::pow(f.phi_zpf, 3) / 6.0, 1e-15);
    // S = 2 terms are excluded.
    EXPECT_EQ(sc_series(f, 0.0, {0, 2, 0}, 3).value, 0.0);
}

TEST(Supercoefficient, ParitySelectionForSymmetricPotential) {
    const TwoCosine t{-50.0, 0, 1, 0, 0, 0, 0, 50.0};
    const auto f = mode_frame(t, 1.0, 20);
    for (const auto& idx : index_set(6, 3))
        if ((idx.l + idx.p) % 2) {
            EXPECT_EQ(sc_closed(t, f, 0.9, idx).value, 0.0);
            EXPECT_EQ(sc_series(f, 0.9, idx, 19).value, 0.0);
        }
}

TEST(Supercoefficient, DriveParity) {
    const auto f = mode_frame(kSnail, 1.0, 30);
    for (const auto& idx : index_set(5, 3)) {
        const double a = sc_closed(kSnail, f, 0.8, idx).value, b = sc_closed(kSnail, f, -0.8, idx).value;
        EXPECT_NEAR(b, (idx.p % 2 ? -1.0 : 1.0) * a, 1e-14 * f.EJ);
    }
}

TEST(Supercoefficient, UndrivenHarmonicsVanish) {
    const auto f = mode_frame(kSnail, 1.0, 20);
    for (int p = 1; p <= 3; ++p) {
        EXPECT_EQ(sc_series(f, 0.0, {1, 1, p}, 19).value, 0.0);
        EXPECT_EQ(sc_closed(kSnail, f, 0.0, {1, 1, p}).value, 0.0);
    }
}

TEST(Supercoefficient, ConvergenceImprovesWithTruncation) {
    const auto f = mode_frame(kSnail, 1.0, 30);
    const double c = sc_closed(kSnail, f, 1.2, {1, 0, 2}).value;
    double prev = INFINITY;
    for (int S = 5; S <= 25; S += 4) {
        const double e = std::fabs(sc_series(f, 1.2, {1, 0, 2}, S).value - c);
        EXPECT_LT(e, prev);
        prev = e;
    }
    EXPECT_LT(sc_series(f, 1.2, {1, 0, 2}, 25).convergence, 1e-10);
}

TEST(Supercoefficient, FluxDriveEnginesAgree) {
    const auto f = mode_frame(kSquid, 1.0, 44);
    for (const auto& idx : index_set(5, 2)) {
        const double s = sc_series_flux(f, 0.4, -0.2, idx, 40).value;
        const double c = sc_closed_flux(kSquid, f, 0.4, -0.2, idx).value;
        EXPECT_LE(rel(s, c, 1e-12 * f.EJ), 1e-9);
        if (2 * idx.n + idx.l + idx.p >= 3) EXPECT_LE(rel(sc_squid_compact(kSquid, f, 0.4, -0.2, idx).value, c, 1e-12 * f.EJ), 1e-9);
    }
    EXPECT_THROW(sc_squid_compact(kSquid, f, 0.4, -0.2, {0, 1, 1}), Error);
}

TEST(Supercoefficient, EqualFluxAmplitudesReduceToCapacitive) {
    const auto f = mode_frame(kSnail, 1.0, 20);
    for (const auto& idx : index_set(4, 2))
        EXPECT_NEAR(sc_closed_flux(kSnail, f, 0.6, 0.6, idx).value, sc_closed(kSnail, f, 0.6, idx).value, 1e-15 * f.EJ);
}

TEST(Supercoefficient, MultiDriveReductions) {
    const auto f = mode_frame(kSnail, 1.0, 30);
    MultiDrive one{{0.7}, false, 0, 0};
    MultiDrive two{{0.7, 0.0}, false, 0, 0};
    for (const auto& idx : index_set(4, 2)) {
        const double ref = sc_closed(kSnail, f, 0.7, idx).value;
        EXPECT_NEAR(sc_multidrive_closed(kSnail, f, one, idx.n, idx.l, {idx.p}).value, ref, 1e-15 * f.EJ);
        EXPECT_NEAR(sc_multidrive_closed(kSnail, f, two, idx.n, idx.l, {idx.p, 0}).value, ref, 1e-15 * f.EJ);
        EXPECT_NEAR(sc_multidrive_series(f, one, idx.n, idx.l, {idx.p}, 25).value, sc_series(f, 0.7, idx, 25).value, 1e-15 * f.EJ);
    }
    MultiDrive mixed{{0.5}, true, 0.3, -0.1};
    for (int n = 0; n <= 1; ++n)
        EXPECT_LE(rel(sc_multidrive_series(f, mixed, n, 1, {1, 1}, 28).value, sc_multidrive_closed(kSnail, f, mixed, n, 1, {1, 1}).value, 1e-12 * f.EJ), 1e-9);
}

TEST(Supercoefficient, ThreeModeReducesToSingleMode) {
    const auto f = mode_frame(kSnail, 1.0, 30);
    for (const auto& idx : index_set(4, 2)) {
        const ScIndex3 i3{idx.n, idx.l, 0, 0, 0, 0, idx.p};
        EXPECT_NEAR(sc_three_mode(kSnail, f, 0.0, 0.0, 0.5, i3, Engine::Closed).value, sc_closed(kSnail, f, 0.5, idx).value, 1e-15 * f.EJ);
    }
    // Hybridized factors carry one power of xi per cavity operator.
    const double xb = 0.03;
    const double a = sc_three_mode(kSnail, f, xb, 0.0, 0.5, {0, 1, 0, 1, 0, 0, 1}, Engine::Closed).value;
    const double b = sc_three_mode(kSnail, f, 2 * xb, 0.0, 0.5, {0, 1, 0, 1, 0, 0, 1}, Engine::Closed).value;
    EXPECT_NEAR(b / a, 2.0, 0.02);
}

TEST(Supercoefficient, IndexSetSize) {
    EXPECT_EQ(index_set(0, 0).size(), 1u);
    EXPECT_EQ(index_set(2, 1).size(), 8u);  // (0,0),(0,1),(0,2),(1,0) x p in {0,1}
}

TEST(Supercoefficient, StrayInductorHasNoClosedForm) {
    const SnailArrayStrayL v{1, 3, 0.11, 50.0, 1.0, 10.0};
    const auto f = mode_frame(v, 1.0, 10);
    EXPECT_THROW(sc_closed(v, f, 0.5, {1, 0, 0}), Error);
    EXPECT_NO_THROW(sc_series(f, 0.5, {1, 0, 0}, 9));
}
