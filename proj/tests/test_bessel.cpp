#include <gtest/gtest.h>

#include <cmath>

#include "supco/bessel.hpp"

using supco::bessel_j;
using supco::bessel_j_all;

TEST(Bessel, MatchesStandardLibrary) {
    for (int p = 0; p <= 10; ++p)
        for (double x = -25.0; x <= 25.0; x += 0.37) {
            const double ref = (x < 0 && p % 2 == 1) ? -std::cyl_bessel_j(p, -x) : std::cyl_bessel_j(p, std::fabs(x));
            EXPECT_NEAR(bessel_j(p, x), ref, 1e-13) << "p=" << p << " x=" << x;
        }
}

TEST(Bessel, ExtendedPrecisionVariant) {
    for (int p = 0; p <= 6; ++p)
        for (long double x : {0.1L, 1.7L, 4.2L, 11.0L}) EXPECT_NEAR(static_cast<double>(bessel_j<long double>(p, x)), std::cyl_bessel_j(p, static_cast<double>(x)), 1e-14);
}

TEST(Bessel, SmallArgumentSeries) {
    for (int p = 0; p <= 4; ++p) EXPECT_NEAR(bessel_j(p, 3e-7), std::cyl_bessel_j(p, 3e-7), 1e-20);
    EXPECT_EQ(bessel_j(0, 0.0), 1.0);
    EXPECT_EQ(bessel_j(3, 0.0), 0.0);
}

TEST(Bessel, NegativeOrderReflection) {
    for (int p = 1; p <= 5; ++p) EXPECT_DOUBLE_EQ(bessel_j(-p, 2.3), (p % 2 ? -1.0 : 1.0) * bessel_j(p, 2.3));
}

TEST(Bessel, AllOrdersConsistent) {
    const auto all = bessel_j_all(8, 6.5);
    for (int p = 0; p <= 8; ++p) EXPECT_NEAR(all[static_cast<std::size_t>(p)], std::cyl_bessel_j(p, 6.5), 1e-14);
}

TEST(Bessel, FirstZeroOfJ0) {
    EXPECT_NEAR(supco::bessel_j0_first_zero(), 2.404825557695773, 1e-14);
    EXPECT_NEAR(bessel_j(0, supco::bessel_j0_first_zero()), 0.0, 1e-15);
}
