#pragma once

#include <string>

namespace gradelens {

// Rounds half away from zero at `places` decimal digits, operating on the
// shortest decimal representation of `value` so that 84.005 rounds to 84.01
// even though the nearest double is slightly below it.
double round_half_up(double value, int places);

// Scores are computed in binary floating point, so a value that equals a
// decimal bound in exact arithmetic can land one ulp below it. Bound
// comparisons (threshold, band edges) accept anything within this distance.
inline constexpr double kBoundaryTolerance = 1e-9;

// value >= bound, up to kBoundaryTolerance.
inline bool reaches(double value, double bound) {
  return value >= bound - kBoundaryTolerance;
}

// round_half_up() rendered with exactly `places` fractional digits.
std::string format_fixed(double value, int places);

}  // namespace gradelens
