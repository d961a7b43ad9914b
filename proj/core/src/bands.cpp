#include "gradelens/bands.hpp"

#include <cmath>
#include <set>

#include "gradelens/decimal.hpp"
#include "gradelens/error.hpp"

namespace gradelens {

void BandScheme::validate() const {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
    fail(Errc::InvalidScale, "band scheme domain must satisfy lo < hi");
  }
  if (bands.empty()) fail(Errc::InvalidScale, "band scheme has no bands");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < bands.size(); ++i) {
    const Band& b = bands[i];
    if (b.label.empty() || !seen.insert(b.label).second) {
      fail(Errc::InvalidScale, "band labels must be non-empty and unique");
    }
    if (!std::isfinite(b.lower) || b.lower < lo || b.lower > hi) {
      fail(Errc::InvalidScale, "band bound outside the scheme domain");
    }
    if (i > 0 && !(b.lower < bands[i - 1].lower)) {
      fail(Errc::InvalidScale, "band lower bounds must be strictly decreasing");
    }
  }
  if (bands.back().lower != lo) {
    fail(Errc::InvalidScale, "lowest band must start at the domain minimum");
  }
}

std::vector<std::string> BandScheme::labels() const {
  std::vector<std::string> out;
  out.reserve(bands.size());
  for (const auto& b : bands) out.push_back(b.label);
  return out;
}

BandScheme default_attainment_scheme() {
  return BandScheme{0.0,
                    1.0,
                    {{"Exemplary", 0.85},
                     {"Satisfactory", 0.70},
                     {"Developing", 0.50},
                     {"Beginning", 0.0}}};
}

BandScheme likert5_scheme() {
  return BandScheme{1.0,
                    5.0,
                    {{"Highly Acceptable", 4.50},
                     {"Acceptable", 3.50},
                     {"Moderately Acceptable", 2.50},
                     {"Slightly Acceptable", 1.50},
                     {"Not Acceptable", 1.00}}};
}

std::size_t band_index(double score, const BandScheme& scheme) {
  if (!(score >= scheme.lo && score <= scheme.hi)) {
    fail(Errc::OutOfDomain, "score " + std::to_string(score) +
                                " outside band scheme domain");
  }
  for (std::size_t i = 0; i < scheme.bands.size(); ++i) {
    if (reaches(score, scheme.bands[i].lower)) return i;
  }
  fail(Errc::InvalidScale, "band scheme does not cover its domain");
}

std::string band_of(double score, const BandScheme& scheme) {
  return scheme.bands[band_index(score, scheme)].label;
}

void GradeScale::validate() const {
  if (bands.empty()) fail(Errc::InvalidScale, "grade scale has no bands");
  for (std::size_t i = 0; i < bands.size(); ++i) {
    const double b = bands[i].lower;
    if (!std::isfinite(b) || b < 0.0 || b > 100.0) {
      fail(Errc::InvalidScale, "grade scale bound outside [0, 100]");
    }
    if (bands[i].label.empty()) {
      fail(Errc::InvalidScale, "grade scale label must be non-empty");
    }
    if (i > 0 && !(b < bands[i - 1].lower)) {
      fail(Errc::InvalidScale, "grade scale bounds must be strictly decreasing");
    }
  }
  if (bands.back().lower != 0.0) {
    fail(Errc::InvalidScale, "lowest grade band must start at 0");
  }
}

GradeScale default_grade_scale() {
  return GradeScale{{{96, "1.00"},
                     {93, "1.25"},
                     {90, "1.50"},
                     {87, "1.75"},
                     {84, "2.00"},
                     {81, "2.25"},
                     {78, "2.50"},
                     {75, "2.75"},
                     {70, "3.00"},
                     {0, "5.00"}}};
}

std::string transmute_grade(double percent, const GradeScale& scale) {
  scale.validate();
  if (!(percent >= 0.0 && percent <= 100.0)) {
    fail(Errc::OutOfRange, "percent must lie in [0, 100]");
  }
  for (const auto& band : scale.bands) {
    if (percent >= band.lower) return band.label;
  }
  fail(Errc::InvalidScale, "grade scale does not cover 0");
}

}  // namespace gradelens
