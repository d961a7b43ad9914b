#pragma once

#include <random>
#include <string>
#include <vector>

#include "gradelens/state.hpp"

namespace gradelens::testing {

struct CohortShape {
  int students = 12;
  int classes = 3;
  int outcomes = 4;
  int rubrics = 2;
  int evaluations_per_student = 3;
};

// A State built directly (no domain validation) with random rubrics,
// mappings, enrolments and evaluations. Terms cycle through kCohortTerms.
State random_cohort(std::mt19937& rng, const CohortShape& shape = {});

inline const std::vector<std::string> kCohortTerms = {"2023-2", "2024-1",
                                                      "2024-2"};
inline constexpr const char* kCohortCurriculum = "2023";

// Every (evaluation id, criterion id) whose level can still go up.
std::vector<std::pair<std::string, std::string>> raisable_levels(
    const State& state);

// Random valid band scheme on [lo, hi] with 2..6 bands.
BandScheme random_scheme(std::mt19937& rng, double lo, double hi);

}  // namespace gradelens::testing
