#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "gradelens/state.hpp"

namespace gradelens {

struct PutUser { UserAccount user; };
struct PutOutcome { ProgramOutcome outcome; };
struct PutCourse { Course course; };
struct CreateClass { ClassSection section; };
struct EnrollStudent { std::string class_id; std::string student_id; };
struct CreateRubric { Rubric rubric; };
struct PutSkill { Skill skill; };
struct AddSkillRating { SkillRating rating; };
struct SetGradeComponents {
  std::string class_id;
  std::vector<GradeComponent> components;
};
struct PutGradeItem { GradeItem item; };
struct AddScore { ScoreEntry entry; };
struct AddEvaluation { EvaluationRecord record; };
struct PutSettings { Settings settings; };

using Change =
    std::variant<PutUser, PutOutcome, PutCourse, CreateClass, EnrollStudent,
                 CreateRubric, PutSkill, AddSkillRating, SetGradeComponents,
                 PutGradeItem, AddScore, AddEvaluation, PutSettings>;

struct ChangeSet {
  std::uint64_t base_version = 0;  // snapshot the changes were computed on
  std::vector<Change> changes;
};

// Key used for optimistic conflict detection: two change sets conflict when
// one touches a key written after the other's base version.
std::string conflict_key(const Change& change);

// Referential integrity and entity invariants against `state`. Throws Error
// with the specific code; the store wraps it as ValidationFailed.
void validate_change(const State& state, const Change& change);

// Applies a validated change. Does not bump State::version.
void apply_change(State& state, const Change& change, std::uint64_t commit_id);

Json change_to_json(const Change& change);
Change change_from_json(const Json& doc);

// A private working copy of one snapshot plus the changes staged on it.
// Domain operations validate against state() and stage() their effects.
class Transaction {
 public:
  Transaction(std::shared_ptr<const State> base, Timestamp now);

  const State& state() const { return working_; }
  std::uint64_t base_version() const { return base_->version; }
  Timestamp now() const { return now_; }

  // validate_change() then apply to the working copy.
  void stage(Change change);

  ChangeSet change_set() const { return {base_->version, changes_}; }
  bool empty() const { return changes_.empty(); }

 private:
  std::shared_ptr<const State> base_;
  State working_;
  std::vector<Change> changes_;
  Timestamp now_;
};

}  // namespace gradelens
