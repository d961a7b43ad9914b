#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gradelens/change.hpp"
#include "gradelens/credentials.hpp"
#include "gradelens/sessions.hpp"

// Accounts, curriculum, classes, rubrics, evaluations and skills. Mutating
// operations validate against tx.state() and stage their effects on the
// transaction; the store commits them.
namespace gradelens {

// Returned record has the credential cleared. Errc::WeakPassword below
// kMinPasswordLength characters.
UserAccount create_user(Transaction& tx, const Actor& actor,
                        const std::string& name, Role role,
                        const std::string& password,
                        const std::string& email = {},
                        int iterations = kDefaultPbkdf2Iterations);

// First DepartmentHead of an empty installation. Errc::Forbidden once any
// DepartmentHead exists.
UserAccount bootstrap_admin(Transaction& tx, const std::string& name,
                            const std::string& password,
                            int iterations = kDefaultPbkdf2Iterations);

// Sets a password and activates the account (imported students start
// without one).
void set_password(Transaction& tx, const Actor& actor,
                  const std::string& user_id, const std::string& password,
                  int iterations = kDefaultPbkdf2Iterations);

// Looks the caller up by user id, then by display name. Unknown user and
// wrong password both raise Errc::BadCredentials.
IssuedToken authenticate(const State& state, SessionManager& sessions,
                         const std::string& name_or_id,
                         const std::string& password);

ProgramOutcome upsert_program_outcome(Transaction& tx, const Actor& actor,
                                      const std::string& code,
                                      const std::string& attribute,
                                      const std::string& curriculum_version,
                                      std::optional<bool> active = {});

Course create_course(Transaction& tx, const Actor& actor,
                     const std::string& code, const std::string& title,
                     double units);

ClassSection create_class_section(Transaction& tx, const Actor& actor,
                                  const std::string& course_code,
                                  const std::string& term,
                                  const std::string& instructor_id);

// Returns the new roster size.
std::size_t enroll_student(Transaction& tx, const Actor& actor,
                           const std::string& class_id,
                           const std::string& student_id);

// Criteria with an empty id get "K1", "K2", ... by position.
Rubric define_rubric(Transaction& tx, const Actor& actor,
                     const std::string& title, std::vector<Criterion> criteria);

EvaluationRecord record_evaluation(Transaction& tx, const Actor& actor,
                                   const std::string& class_id,
                                   const std::string& rubric_id,
                                   const std::string& student_id,
                                   const std::map<std::string, int>& levels);

Skill create_skill(Transaction& tx, const Actor& actor, const std::string& name,
                   const std::string& course_code);

SkillRating record_skill_rating(Transaction& tx, const Actor& actor,
                                const std::string& student_id,
                                const std::string& skill_id,
                                const std::string& class_id, double score);

struct SkillFilter {
  std::optional<std::string> course_code;
  std::optional<std::string> class_id;
};

struct StudentSkill {
  std::string skill_id;
  std::string skill_name;
  std::string course_code;
  std::string class_id;
  double score = 0.0;
  Timestamp recorded_at = 0;
};

// Latest rating per (skill, class), sorted by skill name then class id.
std::vector<StudentSkill> query_student_skills(const State& state,
                                               const Actor& actor,
                                               const std::string& student_id,
                                               const SkillFilter& filter = {});

// Effective (latest) rating per (student, skill, class), in first-seen order.
std::vector<SkillRating> effective_skill_ratings(const State& state);

// Read helpers behind the listing endpoints.
std::vector<UserAccount> list_users(const State& state, const Actor& actor);
std::vector<ProgramOutcome> list_outcomes(
    const State& state, const std::optional<std::string>& curriculum_version);
std::vector<ClassSection> list_classes(const State& state, const Actor& actor);
std::vector<Skill> list_skills(const State& state,
                               const std::optional<std::string>& course_code);

}  // namespace gradelens
