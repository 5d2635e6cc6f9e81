#include <gtest/gtest.h>

#include "support.hpp"

using namespace wdcolor;

TEST(Bounds, AllCentered) {
    EXPECT_EQ(bound_all_centered(1, 3), 6);
    EXPECT_EQ(bound_all_centered(2, 1), 5);
    EXPECT_EQ(bound_all_centered(0, 4), 8);
    for (int k = 0; k < 6; ++k)
        for (int r = 0; r < 6; ++r) EXPECT_EQ(bound_all_centered(k, r), wdtest::reference_all_centered(k, r));
}

TEST(Bounds, AddCentered) {
    EXPECT_EQ(bound_add_centered(1, 0, 1), 4);
    EXPECT_EQ(bound_add_centered(2, 1, 3), 21);
    for (int k = 0; k < 5; ++k)
        for (int r = 0; r < 5; ++r)
            for (int n = 1; n < 6; ++n) EXPECT_EQ(bound_add_centered(k, r, n), wdtest::reference_add_centered(k, r, n));
}

TEST(Bounds, SmallExtension) {
    EXPECT_EQ(bound_small_extension(1, 4), 16);
    EXPECT_EQ(bound_small_extension(0, 5), 12);
}

TEST(Bounds, FStarSmallCases) {
    EXPECT_EQ(bound_fstar({1, 1, 1, 1}, 0, 4), 34);
    EXPECT_EQ(bound_fstar({1, 1, 1, 1}, 1, 4), 4152);
    EXPECT_EQ(bound_torso(1, 1), 4728);
}

TEST(Bounds, FStarIsMonotone) {
    BoundParams bp{2, 3, 1, 2};
    for (int eta = 0; eta <= 2; ++eta) {
        EXPECT_LT(bound_fstar(bp, eta, 4), bound_fstar(bp, eta, 5));
        if (eta > 0) EXPECT_LT(bound_fstar(bp, eta - 1, 4), bound_fstar(bp, eta, 4));
    }
}

TEST(Bounds, LargeValuesStayExact) {
    BigInt big = bound_tw(4, 3);
    EXPECT_GT(big, BigInt(std::numeric_limits<std::int64_t>::max()));
    // the recursion multiplies by (k+2)(theta+1)^2 at every level
    EXPECT_EQ(big % (BigInt(5) * 6 * 6), 0);
}

TEST(Bounds, ParameterErrors) {
    EXPECT_THROW(bound_all_centered(-1, 1), ParameterError);
    EXPECT_THROW(bound_add_centered(1, 1, 0), ParameterError);
    EXPECT_THROW(bound_fstar({1, 1, 1, 1}, 2, 4), ParameterError);
    EXPECT_THROW(bound_fstar({1, 1, 1, 1}, 0, 3), ParameterError);
    EXPECT_THROW(bound_fstar({2, 1, 1, 1}, 0, 4), ParameterError);
    EXPECT_THROW(bound_tw(0, 1), ParameterError);
    EXPECT_THROW(bound_torso(0, 1), ParameterError);
}

TEST(Bounds, Within) {
    EXPECT_TRUE(within(Distance(4), 4));
    EXPECT_FALSE(within(Distance(5), 4));
    EXPECT_FALSE(within(Distance::infinite(), BigInt(1) << 200));
}
