#include <gtest/gtest.h>

#include <cmath>

#include "supco/effective.hpp"
#include "supco/units.hpp"

using namespace supco;

namespace {

const SnailArray kSnail{1, 3, 0.11, units::from_ghz(150.0), units::flux_to_phase(0.32)};
const double kEC = units::from_ghz(0.2);

}  // namespace

TEST(KerrCat, RwaConsistencyWithoutCorrections) {
    const auto f = mode_frame(kSnail, kEC, 26);
    KerrCatOptions o;
    o.corrections = false;
    o.fix_detuning_zero = false;
    const auto k = kerr_cat(kSnail, f, KerrCatDrive::fixed(0.4), o);
    const double c10 = sc_series(f, 0.4, {1, 0, 0}, 13).value;
    const double c20 = sc_series(f, 0.4, {2, 0, 0}, 13).value;
    const double c021 = sc_series(f, 0.4, {0, 2, 1}, 13).value;
    EXPECT_EQ(k.omega_q, f.omega0 + c10);
    EXPECT_EQ(k.K, -c20);
    EXPECT_EQ(std::fabs(k.eps2), std::fabs(c021));
    EXPECT_EQ(k.Delta1, 0.0);
    EXPECT_EQ(k.K1, 0.0);
}

TEST(KerrCat, DetuningFixedPoint) {
    const auto f = mode_frame(kSnail, kEC, 26);
    const auto k = kerr_cat(kSnail, f, KerrCatDrive::fixed(0.8));
    EXPECT_LE(std::fabs(k.Delta) / f.omega0, 1e-10);
    KerrCatOptions o;
    o.fix_detuning_zero = false;
    o.omega_d = k.omega_d;
    const auto again = kerr_cat(kSnail, f, KerrCatDrive::fixed(0.8), o);
    EXPECT_LE(std::fabs(again.Delta) / f.omega0, 1e-10);
}

TEST(KerrCat, NegativeKerrFlipsDrivePhase) {
    const SnailArrayStrayL b{2, 3, 0.11, units::from_ghz(units::ej_ghz_from_lj_nh(0.6)), units::flux_to_phase(0.46), 1.0};
    const auto f = mode_frame(b, units::from_ghz(units::ec_ghz_from_c_pf(0.16)), 26);
    const auto k = kerr_cat(b, f, KerrCatDrive::fixed(1.0));
    ASSERT_LT(k.K, 0.0);
    EXPECT_DOUBLE_EQ(k.gamma, units::pi);
    EXPECT_GE(k.eps2, 0.0);
    EXPECT_DOUBLE_EQ(k.cat_size, std::fabs(k.eps2 / k.K));
}

TEST(KerrCat, EnginesAgreeForSymmetricCircuit) {
    const auto f = mode_frame(kSnail, kEC, 30);
    KerrCatOptions s, c;
    c.engine = Engine::Closed;
    s.S_max = 27;
    const auto a = kerr_cat(kSnail, f, KerrCatDrive::fixed(1.0), s);
    const auto b = kerr_cat(kSnail, f, KerrCatDrive::fixed(1.0), c);
    EXPECT_NEAR(a.K, b.K, 1e-9 * std::fabs(b.K));
    EXPECT_NEAR(a.eps2, b.eps2, 1e-9 * std::fabs(b.eps2));
}

TEST(KerrCat, CapacitiveDriveUsesEffectiveAmplitude) {
    const auto f = mode_frame(kSnail, kEC, 26);
    KerrCatOptions o;
    o.fix_detuning_zero = false;
    o.omega_d = 2.0 * f.omega0;
    const double Om = 0.5;
    const auto cap = kerr_cat(kSnail, f, KerrCatDrive::capacitive(Om), o);
    const auto fix = kerr_cat(kSnail, f, KerrCatDrive::fixed(capacitive_effective({Om, o.omega_d, 0}, f.omega0).pi_tilde), o);
    EXPECT_DOUBLE_EQ(cap.K, fix.K);
    EXPECT_DOUBLE_EQ(cap.eps2, fix.eps2);
}

TEST(Chaos, Classification) {
    EXPECT_EQ(classify_chaos(0.01).cls, ChaosClass::Regular);
    EXPECT_EQ(classify_chaos(0.02).cls, ChaosClass::Onset);
    EXPECT_EQ(classify_chaos(0.03).cls, ChaosClass::Onset);
    EXPECT_EQ(classify_chaos(0.031).cls, ChaosClass::Chaotic);
    EXPECT_GT(classify_chaos(0.03).layer_width, classify_chaos(0.02).layer_width);
    KerrCatParams p;
    p.omega_q = 10.0;
    p.eps2 = 0.25;
    EXPECT_DOUBLE_EQ(chaos_ratio(p).ratio, 0.025);
}

TEST(BeamSplitter, CorrectionTermsAreFirstOrderInXi) {
    auto order = [](const ScIndex3& i) { return 2 * i.nb + i.lb + 2 * i.nc + i.lc; };
    for (const auto* table : {&bs_terms::g_ab(), &bs_terms::g_ac()})
        for (const auto& t : *table) {
            const int a = order(t.x), b = order(t.y);
            EXPECT_EQ((a == 1) + (b == 1), 1);
            EXPECT_EQ(a + b, 1);
        }
}

namespace {

const SnailArray kCoupler{2, 2, 0.25, units::from_ghz(86.0), units::flux_to_phase(0.36)};
const BeamSplitterSetup kSetup{units::from_ghz(2.976), units::from_ghz(6.915), units::from_ghz(0.0756), units::from_ghz(0.1349)};

}  // namespace

TEST(BeamSplitter, UndrivenCouplingVanishes) {
    const auto f = mode_frame(kCoupler, units::from_ghz(0.177), 26);
    const auto b = beam_splitter(kCoupler, f, kSetup, 0.0);
    EXPECT_EQ(b.g_bc, 0.0);
    EXPECT_EQ(b.g_BS, 0.0);
    EXPECT_NE(b.chi_bc, 0.0);
}

TEST(BeamSplitter, LinearInWeakDrive) {
    const auto f = mode_frame(kCoupler, units::from_ghz(0.177), 26);
    const double g1 = beam_splitter(kCoupler, f, kSetup, 1e-3).g_BS;
    const double g2 = beam_splitter(kCoupler, f, kSetup, 2e-3).g_BS;
    EXPECT_NEAR(g2 / g1, 2.0, 1e-5);
}

TEST(BeamSplitter, DressedModesAndDriveFrequency) {
    const auto f = mode_frame(kCoupler, units::from_ghz(0.177), 26);
    const auto b = beam_splitter(kCoupler, f, kSetup, 0.5);
    EXPECT_DOUBLE_EQ(b.omega_d, b.omega_c_p - b.omega_b_p);
    EXPECT_DOUBLE_EQ(b.delta_tilde, b.delta + b.Delta_a);
    EXPECT_DOUBLE_EQ(b.g_BS, b.g_bc - 2.0 * b.g_ab * b.g_ac / b.delta_tilde);
    EXPECT_LT(std::fabs(b.xi_b), 0.1);
}

TEST(BeamSplitter, EnginesAgree) {
    const auto f = mode_frame(kCoupler, units::from_ghz(0.177), 44);
    BeamSplitterOptions s, c;
    s.S_max = 40;
    c.engine = Engine::Closed;
    const auto a = beam_splitter(kCoupler, f, kSetup, 1.0, s);
    const auto b = beam_splitter(kCoupler, f, kSetup, 1.0, c);
    EXPECT_NEAR(a.g_BS, b.g_BS, 1e-8 * std::fabs(b.g_BS));
    EXPECT_NEAR(a.chi_bc, b.chi_bc, 1e-8 * std::fabs(b.chi_bc));
}

TEST(BeamSplitter, DispersiveViolationRejected) {
    const auto f = mode_frame(kCoupler, units::from_ghz(0.177), 26);
    BeamSplitterSetup bad = kSetup;
    bad.omega_b = f.omega0 + units::from_ghz(0.1);
    EXPECT_THROW(beam_splitter(kCoupler, f, bad, 0.5), Error);
}

TEST(Downturn, DetectorOnSyntheticScans) {
    auto scan = [](std::vector<double> g) {
        std::vector<BeamSplitterParams> v;
        for (std::size_t i = 0; i < g.size(); ++i) {
            BeamSplitterParams p;
            p.g_BS = g[i];
            p.pi_tilde = 0.1 * i;
            v.push_back(p);
        }
        return v;
    };
    EXPECT_FALSE(detect_downturn(scan({0, 1, 2, 3, 4})).feature);
    EXPECT_TRUE(detect_downturn(scan({0, 1, 2, 1.5, 1})).feature);
    EXPECT_TRUE(detect_downturn(scan({0, 1, 0.5, -0.2})).feature);
    auto s = scan({0, 1, 2, 1});
    s[3].ratio_ok = false;
    EXPECT_FALSE(detect_downturn(s).feature);
}

TEST(WeakDrive, SquidLowestOrder) {
    const SquidArray s{2, 0.8, units::from_ghz(60.0), 0.5, 0.5, 0.9};
    const auto f = mode_frame(s, units::from_ghz(0.25), 20);
    const auto w = weak_drive_squid_check(s, f, 0.0);
    EXPECT_NEAR(w.K, -sc_closed(s, f, 0.0, {2, 0, 0}).value, 1e-12 * w.K);
    EXPECT_EQ(w.eps2, 0.0);
}
