// Randomized invariants, 1000 cases each.

#include <gtest/gtest.h>

#include "checks.hpp"

namespace gradelens::testing {
namespace {

constexpr std::uint32_t kSeed = 20240601;

#define PROPERTY(name, fn)                                  \
  TEST(Property, name) {                                    \
    const auto r = fn(kSeed, kPropertyCases);               \
    EXPECT_GE(r.cases, kPropertyCases);                     \
    EXPECT_TRUE(r.ok()) << r.summary();                     \
  }

PROPERTY(WeightSumNormalization, check_weight_normalization)
PROPERTY(ScoreAndRateRanges, check_ranges)
PROPERTY(MonotoneInLevelsAndScores, check_monotonicity)
PROPERTY(MapWeightScaleInvariance, check_scale_invariance)
PROPERTY(DistributionConservation, check_distribution_conservation)
PROPERTY(BandTotalityAndOrder, check_band_totality)
PROPERTY(ThetaInclusive, check_theta_inclusive)

}  // namespace
}  // namespace gradelens::testing
