#include "gradelens/decimal.hpp"

#include <gtest/gtest.h>

namespace gradelens {
namespace {

TEST(RoundHalfUp, RoundsTiesAwayFromZero) {
  EXPECT_EQ(round_half_up(84.005, 2), 84.01);
  EXPECT_EQ(round_half_up(0.125, 2), 0.13);
  EXPECT_EQ(round_half_up(-0.125, 2), -0.13);
  EXPECT_EQ(round_half_up(2.5, 0), 3.0);
}

TEST(RoundHalfUp, LeavesShortValuesAlone) {
  EXPECT_EQ(round_half_up(84.0, 2), 84.0);
  EXPECT_EQ(round_half_up(0.7, 4), 0.7);
}

TEST(RoundHalfUp, UsesShortestDecimalNotBinaryExpansion) {
  // 1.005 is stored as 1.00499999999999989...; the decimal reading wins.
  EXPECT_EQ(round_half_up(1.005, 2), 1.01);
  EXPECT_EQ(round_half_up(2.0 / 3.0, 4), 0.6667);
}

TEST(FormatFixed, PadsToPlaces) {
  EXPECT_EQ(format_fixed(84.0, 2), "84.00");
  EXPECT_EQ(format_fixed(2.0 / 3.0, 4), "0.6667");
  EXPECT_EQ(format_fixed(0.0, 4), "0.0000");
  EXPECT_EQ(format_fixed(99.995, 2), "100.00");
}

TEST(Reaches, AcceptsOneUlpBelowBound) {
  EXPECT_TRUE(reaches(0.7, 0.7));
  EXPECT_TRUE(reaches(0.6999999999999999, 0.7));
  EXPECT_FALSE(reaches(0.6999, 0.7));
}

}  // namespace
}  // namespace gradelens
