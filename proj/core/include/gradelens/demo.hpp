#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gradelens/store.hpp"

namespace gradelens {

inline constexpr std::uint32_t kDemoSeed = 20240601;
inline constexpr Timestamp kDemoEpoch = 1'717'200'000'000;  // 2024-06-01
inline constexpr int kDemoPbkdf2Iterations = 10'000;

inline constexpr const char* kDemoHeadPassword = "demo-head-pass";
inline constexpr const char* kDemoInstructorPassword = "demo-instructor-pass";
inline constexpr const char* kDemoStudentPassword = "demo-student-pass";

struct DemoDataset {
  std::string head_id;
  std::vector<std::string> instructor_ids;
  std::vector<std::string> student_ids;
  std::vector<std::string> class_ids;
  std::vector<std::string> outcome_codes;
  std::vector<std::string> rubric_ids;
  std::string curriculum_version;
  std::vector<std::string> terms;
};

// Populates an empty store with 30 students, 2 classes, 5 outcomes and 2
// rubrics, plus gradebook and skill data. The same seed always produces the
// same ids, levels, scores and timestamps; only password salts differ.
// Errc::ValidationError if the store is not empty.
DemoDataset seed_demo(Store& store, std::uint32_t seed = kDemoSeed);

}  // namespace gradelens
