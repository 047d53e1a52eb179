#include <gtest/gtest.h>

#include <limits>

#include "qgstat/dyadic.hpp"

using qgstat::Dyadic;

TEST(Dyadic, NormalizesToLowestTerms) {
    Dyadic a(12, 4);  // 12/16
    EXPECT_EQ(a.numerator(), 3);
    EXPECT_EQ(a.exponent(), 2);
    EXPECT_EQ(Dyadic(0, 9), Dyadic());
    EXPECT_EQ(Dyadic(8, 3), Dyadic(1));
}

TEST(Dyadic, Fractions) {
    EXPECT_EQ(Dyadic(9, 4).to_fraction(), "9/16");
    EXPECT_EQ(Dyadic(1).to_fraction(), "1");
    EXPECT_EQ(Dyadic(-3, 2).to_fraction(), "-3/4");
    EXPECT_EQ(Dyadic().to_fraction(), "0");
    EXPECT_EQ(Dyadic::pow2(3).to_fraction(), "8");
    EXPECT_EQ(Dyadic::pow2(-5).to_fraction(), "1/32");
}

TEST(Dyadic, Arithmetic) {
    EXPECT_EQ(Dyadic(1, 1) + Dyadic(1, 2), Dyadic(3, 2));
    EXPECT_EQ(Dyadic(1, 1) - Dyadic(1, 1), Dyadic());
    EXPECT_EQ(Dyadic(3, 2) * Dyadic(5, 3), Dyadic(15, 5));
    EXPECT_EQ(-Dyadic(7, 3), Dyadic(-7, 3));
    Dyadic acc;
    for (int i = 0; i < 16; ++i) acc += Dyadic(1, 4);
    EXPECT_EQ(acc, Dyadic(1));
    EXPECT_DOUBLE_EQ(Dyadic(5, 3).to_double(), 0.625);
}

TEST(Dyadic, Ordering) {
    EXPECT_LT(Dyadic(1, 1), Dyadic(9, 4));
    EXPECT_GT(Dyadic(5, 3), Dyadic(9, 4));
    EXPECT_LT(Dyadic(-1), Dyadic());
    EXPECT_TRUE(Dyadic().is_zero());
}

TEST(Dyadic, OverflowThrows) {
    Dyadic big(std::numeric_limits<std::int64_t>::max() / 2 + 1);
    EXPECT_THROW(big * Dyadic(4), std::overflow_error);
    EXPECT_THROW(big + big + big, std::overflow_error);
}
