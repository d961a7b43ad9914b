#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace gradelens {

enum class Role { DepartmentHead, Instructor, Student };

inline constexpr Role kAllRoles[] = {Role::DepartmentHead, Role::Instructor,
                                     Role::Student};

std::string_view to_string(Role role) noexcept;
// Accepts the canonical names ("DepartmentHead", ...). Errc::ValidationError
// otherwise.
Role parse_role(std::string_view text);

// Milliseconds since the Unix epoch, UTC.
using Timestamp = std::int64_t;

std::string format_timestamp(Timestamp ts);

struct UserAccount {
  std::string user_id;
  std::string display_name;
  Role role = Role::Student;
  // "pbkdf2-sha256$<iterations>$<salt>$<hash>", or empty when no password has
  // been set yet. Persisted, never part of an API or export payload.
  std::string credential;
  bool active = true;
  std::string email;

  bool operator==(const UserAccount&) const = default;
};

struct ProgramOutcome {
  std::string outcome_code;
  std::string graduate_attribute;
  std::string curriculum_version;
  bool active = true;

  bool operator==(const ProgramOutcome&) const = default;
};

struct Course {
  std::string course_code;
  std::string title;
  double units = 0.0;
  bool archived = false;

  bool operator==(const Course&) const = default;
};

struct ClassSection {
  std::string class_id;
  std::string course_code;
  std::string term;
  std::string instructor_id;
  std::set<std::string> roster;

  bool operator==(const ClassSection&) const = default;
};

struct OutcomeMapping {
  std::string outcome_code;
  double map_weight = 1.0;

  bool operator==(const OutcomeMapping&) const = default;
};

struct Criterion {
  std::string criterion_id;
  std::string description;
  int min_level = 1;
  int max_level = 4;
  std::vector<std::string> level_descriptors;
  double weight = 1.0;
  std::vector<OutcomeMapping> mappings;

  bool operator==(const Criterion&) const = default;
};

struct Rubric {
  std::string rubric_id;
  std::string title;
  std::vector<Criterion> criteria;
  std::string created_by;

  const Criterion* find_criterion(std::string_view id) const;
  bool operator==(const Rubric&) const = default;
};

struct Skill {
  std::string skill_id;
  std::string name;
  std::string course_code;

  bool operator==(const Skill&) const = default;
};

struct SkillRating {
  std::string student_id;
  std::string skill_id;
  std::string class_id;
  double score = 0.0;
  Timestamp recorded_at = 0;

  bool operator==(const SkillRating&) const = default;
};

struct GradeComponent {
  std::string component_id;
  std::string class_id;
  std::string name;
  double weight = 0.0;

  bool operator==(const GradeComponent&) const = default;
};

struct GradeItem {
  std::string item_id;
  std::string class_id;
  std::string component_id;
  std::string title;
  double max_points = 0.0;

  bool operator==(const GradeItem&) const = default;
};

struct ScoreEntry {
  std::string student_id;
  std::string item_id;
  double raw_score = 0.0;
  Timestamp recorded_at = 0;

  bool operator==(const ScoreEntry&) const = default;
};

struct EvaluationRecord {
  std::string evaluation_id;
  std::string class_id;
  std::string rubric_id;
  std::string student_id;
  std::map<std::string, int> levels;  // criterion_id -> chosen level
  std::string evaluator_id;
  Timestamp recorded_at = 0;

  bool operator==(const EvaluationRecord&) const = default;
};

// The authenticated caller of an operation.
struct Actor {
  std::string user_id;
  Role role = Role::Student;
};

}  // namespace gradelens
