#pragma once

#include "gradelens/bands.hpp"
#include "gradelens/canonical_json.hpp"
#include "gradelens/model.hpp"

// nlohmann::json ADL hooks for the persisted entity shapes. These include the
// credential field and are used only by the store; API payloads go through
// public_json().
namespace gradelens {

void to_json(Json& j, const UserAccount& v);
void from_json(const Json& j, UserAccount& v);
void to_json(Json& j, const ProgramOutcome& v);
void from_json(const Json& j, ProgramOutcome& v);
void to_json(Json& j, const Course& v);
void from_json(const Json& j, Course& v);
void to_json(Json& j, const ClassSection& v);
void from_json(const Json& j, ClassSection& v);
void to_json(Json& j, const OutcomeMapping& v);
void from_json(const Json& j, OutcomeMapping& v);
void to_json(Json& j, const Criterion& v);
void from_json(const Json& j, Criterion& v);
void to_json(Json& j, const Rubric& v);
void from_json(const Json& j, Rubric& v);
void to_json(Json& j, const Skill& v);
void from_json(const Json& j, Skill& v);
void to_json(Json& j, const SkillRating& v);
void from_json(const Json& j, SkillRating& v);
void to_json(Json& j, const GradeComponent& v);
void from_json(const Json& j, GradeComponent& v);
void to_json(Json& j, const GradeItem& v);
void from_json(const Json& j, GradeItem& v);
void to_json(Json& j, const ScoreEntry& v);
void from_json(const Json& j, ScoreEntry& v);
void to_json(Json& j, const EvaluationRecord& v);
void from_json(const Json& j, EvaluationRecord& v);
void to_json(Json& j, const Band& v);
void from_json(const Json& j, Band& v);
void to_json(Json& j, const BandScheme& v);
void from_json(const Json& j, BandScheme& v);
void to_json(Json& j, const GradeBand& v);
void from_json(const Json& j, GradeBand& v);
void to_json(Json& j, const GradeScale& v);
void from_json(const Json& j, GradeScale& v);

// API-facing account shape: everything except the credential.
Json public_json(const UserAccount& user);

}  // namespace gradelens
