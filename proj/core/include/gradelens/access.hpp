#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "gradelens/model.hpp"
#include "gradelens/state.hpp"

namespace gradelens {

// Everything an authenticated caller can ask for. Each API endpoint maps to
// exactly one action.
enum class Action {
  ListUsers,
  CreateUser,
  SetPassword,
  ListOutcomes,
  EditOutcomes,
  ListCourses,
  CreateCourse,
  ListClasses,
  CreateClass,
  ManageRoster,
  ManageGradebook,
  ViewGradebook,
  ListRubrics,
  CreateRubric,
  RecordEvaluation,
  ListSkills,
  CreateSkill,
  RateSkill,
  ViewStudentRecord,
  ViewClassAnalytics,
  ViewProgramAnalytics,
  ExportReport,
  ViewSettings,
  EditSettings,
};

std::span<const Action> all_actions();
std::string_view to_string(Action action) noexcept;

// How a (role, action) cell is decided.
enum class Rule {
  Deny,
  Allow,
  OwnClass,        // resource.class_id is taught by the caller
  OwnRecord,       // resource.student_id is the caller
  TeachesStudent,  // resource.student_id is on a roster the caller teaches
  SelfInstructor,  // resource.instructor_id is the caller
};

// What the action is applied to. Unset fields are not consulted.
struct Resource {
  std::optional<std::string> class_id;
  std::optional<std::string> student_id;
  std::optional<std::string> instructor_id;

  static Resource of_class(std::string id) { return {std::move(id), {}, {}}; }
  static Resource of_student(std::string id) { return {{}, std::move(id), {}}; }
};

struct Decision {
  bool allowed = false;
  std::string reason;
};

// The complete role x action table.
//
//                      DepartmentHead  Instructor      Student
//   List*/ViewSettings Allow           Allow           Allow (outcomes,
//                                                      courses, classes,
//                                                      skills, settings)
//   Users, outcomes,   Allow           Deny            Deny
//   courses, settings
//   edits
//   CreateClass        Allow           SelfInstructor  Deny
//   Roster, gradebook, Allow           OwnClass        Deny
//   evaluations,
//   skill ratings,
//   class analytics,
//   export
//   Rubrics, skills    Allow           Allow           Deny
//   ViewStudentRecord  Allow           TeachesStudent  OwnRecord
//   Program analytics  Allow           Deny            Deny
class PermissionMatrix {
 public:
  static Rule rule(Role role, Action action) noexcept;
};

Decision authorize(const Actor& actor, Action action, const Resource& resource,
                   const State& state);

// authorize() or throw Errc::Forbidden.
void require(const Actor& actor, Action action, const Resource& resource,
             const State& state);

}  // namespace gradelens
