#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gradelens/canonical_json.hpp"
#include "gradelens/model.hpp"
#include "gradelens/settings.hpp"

namespace gradelens {

using OutcomeKey = std::pair<std::string, std::string>;  // (code, version)

// Everything the system knows at one commit. Treated as an immutable value
// once published by the store; mutation happens only on private copies.
struct State {
  std::uint64_t version = 0;  // id of the last applied commit

  std::map<std::string, UserAccount> users;
  std::map<OutcomeKey, ProgramOutcome> outcomes;
  std::map<std::string, Course> courses;
  std::map<std::string, ClassSection> classes;
  std::map<std::string, Rubric> rubrics;
  std::map<std::string, Skill> skills;
  std::vector<SkillRating> skill_ratings;  // full history, commit order
  std::map<std::string, std::vector<GradeComponent>> grade_components;
  std::map<std::string, GradeItem> grade_items;
  std::vector<ScoreEntry> score_history;  // full history, commit order
  std::map<std::string, EvaluationRecord> evaluations;
  Settings settings;

  // Commit id that last touched each conflict key. Rebuilt on replay and not
  // part of the persisted image.
  std::map<std::string, std::uint64_t> key_versions;

  const UserAccount* find_user(const std::string& id) const;
  const Course* find_course(const std::string& code) const;
  const ClassSection* find_class(const std::string& id) const;
  const Rubric* find_rubric(const std::string& id) const;
  const Skill* find_skill(const std::string& id) const;
  const GradeItem* find_item(const std::string& id) const;
  // True when any curriculum version defines the code, archived or not.
  bool outcome_code_exists(const std::string& code) const;

  // Next identifier of the form <prefix><6 digits> not yet used in `taken`.
  template <typename Map>
  static std::string next_id(const Map& taken, std::string_view prefix);
};

// Persisted image (no key_versions). Used for snapshot files and equality
// checks in tests.
Json state_to_json(const State& state);
State state_from_json(const Json& doc);

std::string make_id(std::string_view prefix, std::size_t n);

template <typename Map>
std::string State::next_id(const Map& taken, std::string_view prefix) {
  for (std::size_t n = taken.size() + 1;; ++n) {
    std::string id = make_id(prefix, n);
    if (taken.find(id) == taken.end()) return id;
  }
}

}  // namespace gradelens
