#pragma once

// Whole-criterion checks shared by the gtest suites and the acceptance
// runner. Each returns the number of cases examined and the first few
// failures, and never throws for a mismatch.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gradelens/state.hpp"

namespace gradelens::testing {

struct CheckResult {
  std::size_t cases = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty() && cases > 0; }
  void fail(std::string what);
  std::string summary() const;
};

inline constexpr std::size_t kPropertyCases = 1000;

// Summary of the software evaluation survey: criterion means and labels.
struct SurveyRow {
  const char* criterion;
  double mean;
  const char* interpretation;
};
const std::vector<SurveyRow>& survey_table();
inline constexpr const char* kSurveyOverall = "4.43";
inline constexpr const char* kSurveyOverallInterpretation = "Acceptable";

CheckResult check_survey_mean();
CheckResult check_survey_bands();

// Every analytics output on `state` against the brute-force oracle.
CheckResult check_oracle_equivalence(const State& state, double theta);

CheckResult check_weight_normalization(std::uint32_t seed, std::size_t cases);
CheckResult check_ranges(std::uint32_t seed, std::size_t cases);
CheckResult check_monotonicity(std::uint32_t seed, std::size_t cases);
CheckResult check_scale_invariance(std::uint32_t seed, std::size_t cases);
CheckResult check_distribution_conservation(std::uint32_t seed,
                                            std::size_t cases);
CheckResult check_band_totality(std::uint32_t seed, std::size_t cases);
CheckResult check_theta_inclusive(std::uint32_t seed, std::size_t cases);

// Runs `commits` commits in `work_dir`, then reopens a copy of the journal cut
// at every byte offset.
CheckResult check_crash_safety(const std::filesystem::path& work_dir,
                               int commits);

// Every (role, endpoint) cell over HTTP-shaped requests against seeded data.
CheckResult check_rbac_matrix();

// Drives the create -> enroll -> evaluate -> analytics flow over a real
// socket and compares every analytics body with the library rendering.
CheckResult check_api_equivalence();

}  // namespace gradelens::testing
