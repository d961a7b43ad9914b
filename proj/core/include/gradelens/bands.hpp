#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace gradelens {

struct Band {
  std::string label;
  double lower = 0.0;  // inclusive

  bool operator==(const Band&) const = default;
};

// Ordered, lower-bound-inclusive partition of [lo, hi]. Bands are listed from
// the highest to the lowest; the last band's lower bound equals lo.
struct BandScheme {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<Band> bands;

  // Errc::InvalidScale when the bands do not partition [lo, hi].
  void validate() const;
  std::vector<std::string> labels() const;
  bool operator==(const BandScheme&) const = default;
};

// Exemplary >= 0.85, Satisfactory >= 0.70, Developing >= 0.50, Beginning >= 0.
BandScheme default_attainment_scheme();
// Five-point acceptability scale on [1, 5] with half-step boundaries.
BandScheme likert5_scheme();

// Index of the band containing `score` (0 = highest band).
// Errc::OutOfDomain outside [lo, hi].
std::size_t band_index(double score, const BandScheme& scheme);
std::string band_of(double score, const BandScheme& scheme);

struct GradeBand {
  double lower = 0.0;  // inclusive percent bound
  std::string label;

  bool operator==(const GradeBand&) const = default;
};

// Percent-to-grade transmutation table, highest band first.
struct GradeScale {
  std::vector<GradeBand> bands;

  void validate() const;  // Errc::InvalidScale
  bool operator==(const GradeScale&) const = default;
};

// 96 -> 1.00 ... 70 -> 3.00, below 70 -> 5.00.
GradeScale default_grade_scale();

// Errc::OutOfRange outside [0, 100]; Errc::InvalidScale for a bad table.
std::string transmute_grade(double percent, const GradeScale& scale);

}  // namespace gradelens
