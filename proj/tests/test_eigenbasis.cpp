#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "supco/eigenbasis.hpp"
#include "supco/units.hpp"

using namespace supco;

namespace {

const TwoCosine kTransmon{-50.0, 0, 1, 0, 0, 0, 0, 50.0};

EigenOptions charge(int dim = 61) {
    EigenOptions o;
    o.basis = Basis::Charge;
    o.dim = dim;
    return o;
}

}  // namespace

TEST(Eigenbasis, ChargeAndGridAgree) {
    const auto c = diagonalize_static(kTransmon, 1.0, charge());
    const auto g = diagonalize_static(kTransmon, 1.0);
    for (int j = 0; j < 6; ++j) EXPECT_NEAR(c.energies(j), g.energies(j), 1e-9 * std::fabs(g.energies(j)));
}

TEST(Eigenbasis, BesselZeroGivesFreeRotor) {
    auto o = charge();
    o.drive_ratio = bessel_j0_first_zero();
    o.n_g = 0.3;
    const auto fr = diagonalize_static(kTransmon, 1.0, o);
    std::vector<double> rotor;
    for (int n = -30; n <= 30; ++n) rotor.push_back(4.0 * (n - 0.3) * (n - 0.3));
    std::sort(rotor.begin(), rotor.end());
    for (int j = 0; j < 10; ++j) EXPECT_NEAR(fr.energies(j), rotor[static_cast<std::size_t>(j)], 1e-8 * rotor[static_cast<std::size_t>(j)]);
}

TEST(Eigenbasis, ParitySelectionRules) {
    for (const auto& fr : {diagonalize_static(kTransmon, 1.0, charge()), diagonalize_static(kTransmon, 1.0)}) {
        EXPECT_LE(std::abs(trig_element(fr, 1, 0, false, 0, 1)), 1e-10);
        EXPECT_LE(std::abs(trig_element(fr, 1, 0, true, 0, 0)), 1e-10);
        EXPECT_LE(std::abs(trig_element(fr, 1, 0, true, 0, 2)), 1e-10);
        EXPECT_GT(std::abs(trig_element(fr, 1, 0, false, 0, 2)), 1e-3);
    }
}

TEST(Eigenbasis, CosineElementMatchesAcrossBases) {
    const auto c = diagonalize_static(kTransmon, 1.0, charge());
    const auto g = diagonalize_static(kTransmon, 1.0);
    EXPECT_NEAR(std::abs(trig_element(c, 1, 0, false, 0, 2)), std::abs(trig_element(g, 1, 0, false, 0, 2)), 1e-8);
}

TEST(Eigenbasis, HarmonicLimit) {
    const TwoCosine t{-100.0, 0, 1, 0, 0, 0, 0, 100.0};
    const auto f = mode_frame(t, 1.0, 8);
    const auto fr = diagonalize_static(t, 1.0);
    for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b) {
            const double osc = oscillator_cos_element(1, 0, 0, f.phi_zpf, a, b);
            if (std::fabs(osc) < 1e-6) continue;
            EXPECT_NEAR(std::abs(trig_element(fr, 1, 0, false, a, b)), std::fabs(osc), 0.05 * std::fabs(osc)) << a << b;
        }
}

TEST(Eigenbasis, CompletenessBound) {
    const auto fr = diagonalize_static(kTransmon, 1.0, charge());
    double s = 0.0;
    for (int j = 0; j < fr.dim(); ++j) s += std::norm(trig_element(fr, 1, 0, false, j, 0));
    EXPECT_LE(s, 1.0 + 1e-12);
}

TEST(Eigenbasis, UndrivenHarmonicsVanish) {
    const auto fr = diagonalize_static(kTransmon, 1.0);
    for (int p = 1; p <= 3; ++p) EXPECT_EQ(std::abs(sc_eigen(fr, 0, 1, p)), 0.0);
    EXPECT_NE(std::abs(sc_eigen(fr, 0, 0, 0)), 0.0);
}

TEST(Eigenbasis, SnailArrayNeedsGridBasis) {
    const SnailArray s{2, 3, 0.11, 100.0, units::flux_to_phase(0.4)};
    EXPECT_THROW(diagonalize_static(s, 1.0, charge()), Error);
    const auto fr = diagonalize_static(s, 1.0);
    const auto f = mode_frame(s, 1.0, 8);
    EXPECT_NEAR(fr.energies(1) - fr.energies(0), f.omega0, 0.05 * f.omega0);
}

TEST(Eigenbasis, ChargeBasisNeedsOddDimension) { EXPECT_THROW(diagonalize_static(kTransmon, 1.0, charge(60)), Error); }
