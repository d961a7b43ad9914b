#include "gradelens/access.hpp"

#include <array>

#include "gradelens/error.hpp"

namespace gradelens {

namespace {

constexpr std::array kActions = {
    Action::ListUsers,          Action::CreateUser,
    Action::SetPassword,        Action::ListOutcomes,
    Action::EditOutcomes,       Action::ListCourses,
    Action::CreateCourse,       Action::ListClasses,
    Action::CreateClass,        Action::ManageRoster,
    Action::ManageGradebook,    Action::ViewGradebook,
    Action::ListRubrics,        Action::CreateRubric,
    Action::RecordEvaluation,   Action::ListSkills,
    Action::CreateSkill,        Action::RateSkill,
    Action::ViewStudentRecord,  Action::ViewClassAnalytics,
    Action::ViewProgramAnalytics, Action::ExportReport,
    Action::ViewSettings,       Action::EditSettings,
};

Rule instructor_rule(Action action) {
  switch (action) {
    case Action::ListOutcomes:
    case Action::ListCourses:
    case Action::ListClasses:
    case Action::ListRubrics:
    case Action::CreateRubric:
    case Action::ListSkills:
    case Action::CreateSkill:
    case Action::ViewSettings:
      return Rule::Allow;
    case Action::CreateClass:
      return Rule::SelfInstructor;
    case Action::ManageRoster:
    case Action::ManageGradebook:
    case Action::ViewGradebook:
    case Action::RecordEvaluation:
    case Action::RateSkill:
    case Action::ViewClassAnalytics:
    case Action::ExportReport:
      return Rule::OwnClass;
    case Action::ViewStudentRecord:
      return Rule::TeachesStudent;
    default:
      return Rule::Deny;
  }
}

Rule student_rule(Action action) {
  switch (action) {
    case Action::ListOutcomes:
    case Action::ListCourses:
    case Action::ListClasses:
    case Action::ListSkills:
    case Action::ViewSettings:
      return Rule::Allow;
    case Action::ViewStudentRecord:
      return Rule::OwnRecord;
    default:
      return Rule::Deny;
  }
}

bool teaches(const State& state, const std::string& instructor,
             const std::string& class_id) {
  const auto* cls = state.find_class(class_id);
  return cls != nullptr && cls->instructor_id == instructor;
}

}  // namespace

std::span<const Action> all_actions() { return kActions; }

std::string_view to_string(Action action) noexcept {
  switch (action) {
    case Action::ListUsers: return "ListUsers";
    case Action::CreateUser: return "CreateUser";
    case Action::SetPassword: return "SetPassword";
    case Action::ListOutcomes: return "ListOutcomes";
    case Action::EditOutcomes: return "EditOutcomes";
    case Action::ListCourses: return "ListCourses";
    case Action::CreateCourse: return "CreateCourse";
    case Action::ListClasses: return "ListClasses";
    case Action::CreateClass: return "CreateClass";
    case Action::ManageRoster: return "ManageRoster";
    case Action::ManageGradebook: return "ManageGradebook";
    case Action::ViewGradebook: return "ViewGradebook";
    case Action::ListRubrics: return "ListRubrics";
    case Action::CreateRubric: return "CreateRubric";
    case Action::RecordEvaluation: return "RecordEvaluation";
    case Action::ListSkills: return "ListSkills";
    case Action::CreateSkill: return "CreateSkill";
    case Action::RateSkill: return "RateSkill";
    case Action::ViewStudentRecord: return "ViewStudentRecord";
    case Action::ViewClassAnalytics: return "ViewClassAnalytics";
    case Action::ViewProgramAnalytics: return "ViewProgramAnalytics";
    case Action::ExportReport: return "ExportReport";
    case Action::ViewSettings: return "ViewSettings";
    case Action::EditSettings: return "EditSettings";
  }
  return "Unknown";
}

Rule PermissionMatrix::rule(Role role, Action action) noexcept {
  switch (role) {
    case Role::DepartmentHead: return Rule::Allow;
    case Role::Instructor: return instructor_rule(action);
    case Role::Student: return student_rule(action);
  }
  return Rule::Deny;
}

Decision authorize(const Actor& actor, Action action, const Resource& resource,
                   const State& state) {
  const auto* account = state.find_user(actor.user_id);
  if (account == nullptr || !account->active || account->role != actor.role) {
    return {false, "unknown account, inactive, or its role changed"};
  }
  const std::string what = std::string(to_string(actor.role)) + " may not " +
                           std::string(to_string(action));
  switch (PermissionMatrix::rule(actor.role, action)) {
    case Rule::Allow:
      return {true, ""};
    case Rule::Deny:
      return {false, what};
    case Rule::OwnClass:
      if (resource.class_id && teaches(state, actor.user_id, *resource.class_id)) {
        return {true, ""};
      }
      return {false, what + " outside their own classes"};
    case Rule::OwnRecord:
      if (resource.student_id && *resource.student_id == actor.user_id) {
        return {true, ""};
      }
      return {false, what + " for another student"};
    case Rule::TeachesStudent:
      if (resource.student_id) {
        for (const auto& [_, cls] : state.classes) {
          if (cls.instructor_id == actor.user_id &&
              cls.roster.contains(*resource.student_id)) {
            return {true, ""};
          }
        }
      }
      return {false, what + " for students outside their classes"};
    case Rule::SelfInstructor:
      if (resource.instructor_id && *resource.instructor_id == actor.user_id) {
        return {true, ""};
      }
      return {false, what + " on behalf of another instructor"};
  }
  return {false, what};
}

void require(const Actor& actor, Action action, const Resource& resource,
             const State& state) {
  auto decision = authorize(actor, action, resource, state);
  if (!decision.allowed) fail(Errc::Forbidden, decision.reason);
}

}  // namespace gradelens
