#include "gradelens/domain.hpp"

#include <algorithm>
#include <tuple>

#include "gradelens/access.hpp"
#include "gradelens/error.hpp"
#include "gradelens/validation.hpp"

namespace gradelens {

namespace {

void check_password(const std::string& password) {
  if (password.size() < kMinPasswordLength) {
    fail(Errc::WeakPassword, "password must have at least " +
                                 std::to_string(kMinPasswordLength) +
                                 " characters");
  }
}

UserAccount without_credential(UserAccount user) {
  user.credential.clear();
  return user;
}

const ClassSection& class_or_fail(const State& s, const std::string& id) {
  const auto* cls = s.find_class(id);
  if (cls == nullptr) fail(Errc::UnknownClass, "unknown class '" + id + "'");
  return *cls;
}

}  // namespace

UserAccount create_user(Transaction& tx, const Actor& actor,
                        const std::string& name, Role role,
                        const std::string& password, const std::string& email,
                        int iterations) {
  require(actor, Action::CreateUser, {}, tx.state());
  check_password(password);
  if (name.empty()) fail(Errc::ValidationError, "display name is empty");
  UserAccount user;
  user.user_id = State::next_id(tx.state().users, "u");
  user.display_name = name;
  user.role = role;
  user.credential = hash_password(password, iterations);
  user.email = email;
  tx.stage(PutUser{user});
  return without_credential(std::move(user));
}

UserAccount bootstrap_admin(Transaction& tx, const std::string& name,
                            const std::string& password, int iterations) {
  for (const auto& [_, u] : tx.state().users) {
    if (u.role == Role::DepartmentHead) {
      fail(Errc::Forbidden, "a department head already exists");
    }
  }
  check_password(password);
  if (name.empty()) fail(Errc::ValidationError, "display name is empty");
  UserAccount user;
  user.user_id = State::next_id(tx.state().users, "u");
  user.display_name = name;
  user.role = Role::DepartmentHead;
  user.credential = hash_password(password, iterations);
  tx.stage(PutUser{user});
  return without_credential(std::move(user));
}

void set_password(Transaction& tx, const Actor& actor,
                  const std::string& user_id, const std::string& password,
                  int iterations) {
  require(actor, Action::SetPassword, {}, tx.state());
  check_password(password);
  const auto* existing = tx.state().find_user(user_id);
  if (existing == nullptr) fail(Errc::UnknownUser, "unknown user '" + user_id + "'");
  UserAccount user = *existing;
  user.credential = hash_password(password, iterations);
  user.active = true;
  tx.stage(PutUser{std::move(user)});
}

IssuedToken authenticate(const State& state, SessionManager& sessions,
                         const std::string& name_or_id,
                         const std::string& password) {
  std::vector<const UserAccount*> candidates;
  if (const auto* by_id = state.find_user(name_or_id)) {
    candidates.push_back(by_id);
  } else {
    for (const auto& [_, u] : state.users) {
      if (u.display_name == name_or_id) candidates.push_back(&u);
    }
  }
  for (const auto* user : candidates) {
    if (!verify_password(password, user->credential)) continue;
    if (!user->active) {
      fail(Errc::AccountInactive, "account is inactive");
    }
    return sessions.issue(*user, state.settings.token_ttl_minutes);
  }
  fail(Errc::BadCredentials, "invalid credentials");
}

ProgramOutcome upsert_program_outcome(Transaction& tx, const Actor& actor,
                                      const std::string& code,
                                      const std::string& attribute,
                                      const std::string& curriculum_version,
                                      std::optional<bool> active) {
  require(actor, Action::EditOutcomes, {}, tx.state());
  if (code.empty()) fail(Errc::ValidationError, "outcome code is empty");
  if (attribute.empty()) fail(Errc::EmptyAttribute, "graduate attribute is empty");
  ProgramOutcome outcome{code, attribute, curriculum_version, true};
  if (auto it = tx.state().outcomes.find({code, curriculum_version});
      it != tx.state().outcomes.end()) {
    outcome.active = it->second.active;
  }
  if (active) outcome.active = *active;
  tx.stage(PutOutcome{outcome});
  return outcome;
}

Course create_course(Transaction& tx, const Actor& actor,
                     const std::string& code, const std::string& title,
                     double units) {
  require(actor, Action::CreateCourse, {}, tx.state());
  if (tx.state().find_course(code) != nullptr) {
    fail(Errc::DuplicateCode, "course '" + code + "' already exists");
  }
  Course course{code, title, units, false};
  tx.stage(PutCourse{course});
  return course;
}

ClassSection create_class_section(Transaction& tx, const Actor& actor,
                                  const std::string& course_code,
                                  const std::string& term,
                                  const std::string& instructor_id) {
  Resource res;
  res.instructor_id = instructor_id;
  require(actor, Action::CreateClass, res, tx.state());
  ClassSection cls;
  cls.class_id = State::next_id(tx.state().classes, "c");
  cls.course_code = course_code;
  cls.term = term;
  cls.instructor_id = instructor_id;
  tx.stage(CreateClass{cls});
  return cls;
}

std::size_t enroll_student(Transaction& tx, const Actor& actor,
                           const std::string& class_id,
                           const std::string& student_id) {
  class_or_fail(tx.state(), class_id);
  require(actor, Action::ManageRoster, Resource::of_class(class_id), tx.state());
  tx.stage(EnrollStudent{class_id, student_id});
  return tx.state().find_class(class_id)->roster.size();
}

Rubric define_rubric(Transaction& tx, const Actor& actor,
                     const std::string& title, std::vector<Criterion> criteria) {
  require(actor, Action::CreateRubric, {}, tx.state());
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (criteria[i].criterion_id.empty()) {
      criteria[i].criterion_id = "K" + std::to_string(i + 1);
    }
  }
  Rubric rubric{State::next_id(tx.state().rubrics, "r"), title,
                std::move(criteria), actor.user_id};
  validate_rubric(tx.state(), rubric);
  tx.stage(CreateRubric{rubric});
  return rubric;
}

EvaluationRecord record_evaluation(Transaction& tx, const Actor& actor,
                                   const std::string& class_id,
                                   const std::string& rubric_id,
                                   const std::string& student_id,
                                   const std::map<std::string, int>& levels) {
  const auto& cls = class_or_fail(tx.state(), class_id);
  require(actor, Action::RecordEvaluation, Resource::of_class(class_id),
          tx.state());
  const auto* rubric = tx.state().find_rubric(rubric_id);
  if (rubric == nullptr) fail(Errc::UnknownRubric, "unknown rubric '" + rubric_id + "'");
  if (!cls.roster.contains(student_id)) {
    fail(Errc::NotEnrolled, "student '" + student_id + "' is not enrolled");
  }
  validate_levels(*rubric, levels);
  EvaluationRecord ev{State::next_id(tx.state().evaluations, "e"),
                      class_id,
                      rubric_id,
                      student_id,
                      levels,
                      actor.user_id,
                      tx.now()};
  tx.stage(AddEvaluation{ev});
  return ev;
}

Skill create_skill(Transaction& tx, const Actor& actor, const std::string& name,
                   const std::string& course_code) {
  require(actor, Action::CreateSkill, {}, tx.state());
  Skill skill{State::next_id(tx.state().skills, "s"), name, course_code};
  tx.stage(PutSkill{skill});
  return skill;
}

SkillRating record_skill_rating(Transaction& tx, const Actor& actor,
                                const std::string& student_id,
                                const std::string& skill_id,
                                const std::string& class_id, double score) {
  const auto& cls = class_or_fail(tx.state(), class_id);
  require(actor, Action::RateSkill, Resource::of_class(class_id), tx.state());
  if (tx.state().find_skill(skill_id) == nullptr) {
    fail(Errc::UnknownSkill, "unknown skill '" + skill_id + "'");
  }
  if (!cls.roster.contains(student_id)) {
    fail(Errc::NotEnrolled, "student '" + student_id + "' is not enrolled");
  }
  if (!(score >= 0.0 && score <= 100.0)) {
    fail(Errc::OutOfRange, "skill score must lie in [0, 100]");
  }
  SkillRating rating{student_id, skill_id, class_id, score, tx.now()};
  tx.stage(AddSkillRating{rating});
  return rating;
}

std::vector<SkillRating> effective_skill_ratings(const State& state) {
  std::vector<SkillRating> out;
  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> index;
  for (const auto& r : state.skill_ratings) {
    auto key = std::make_tuple(r.student_id, r.skill_id, r.class_id);
    auto [it, inserted] = index.try_emplace(key, out.size());
    if (inserted) {
      out.push_back(r);
    } else {
      out[it->second] = r;
    }
  }
  return out;
}

std::vector<StudentSkill> query_student_skills(const State& state,
                                               const Actor& actor,
                                               const std::string& student_id,
                                               const SkillFilter& filter) {
  require(actor, Action::ViewStudentRecord, Resource::of_student(student_id),
          state);
  std::vector<StudentSkill> out;
  for (const auto& r : effective_skill_ratings(state)) {
    if (r.student_id != student_id) continue;
    if (filter.class_id && r.class_id != *filter.class_id) continue;
    const auto* skill = state.find_skill(r.skill_id);
    if (skill == nullptr) continue;
    if (filter.course_code && skill->course_code != *filter.course_code) continue;
    out.push_back({skill->skill_id, skill->name, skill->course_code, r.class_id,
                   r.score, r.recorded_at});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.skill_name, a.class_id) < std::tie(b.skill_name, b.class_id);
  });
  return out;
}

std::vector<UserAccount> list_users(const State& state, const Actor& actor) {
  require(actor, Action::ListUsers, {}, state);
  std::vector<UserAccount> out;
  for (const auto& [_, u] : state.users) out.push_back(without_credential(u));
  return out;
}

std::vector<ProgramOutcome> list_outcomes(
    const State& state, const std::optional<std::string>& curriculum_version) {
  std::vector<ProgramOutcome> out;
  for (const auto& [_, o] : state.outcomes) {
    if (!curriculum_version || o.curriculum_version == *curriculum_version) {
      out.push_back(o);
    }
  }
  return out;
}

std::vector<ClassSection> list_classes(const State& state, const Actor& actor) {
  std::vector<ClassSection> out;
  for (const auto& [_, cls] : state.classes) {
    const bool visible =
        actor.role == Role::DepartmentHead ||
        (actor.role == Role::Instructor && cls.instructor_id == actor.user_id) ||
        (actor.role == Role::Student && cls.roster.contains(actor.user_id));
    if (!visible) continue;
    ClassSection copy = cls;
    // Students see which classes they are in, not who else is.
    if (actor.role == Role::Student) copy.roster = {actor.user_id};
    out.push_back(std::move(copy));
  }
  return out;
}

std::vector<Skill> list_skills(const State& state,
                               const std::optional<std::string>& course_code) {
  std::vector<Skill> out;
  for (const auto& [_, s] : state.skills) {
    if (!course_code || s.course_code == *course_code) out.push_back(s);
  }
  return out;
}

}  // namespace gradelens
