#include "gradelens/change.hpp"

#include <cmath>
#include <set>

#include "gradelens/error.hpp"
#include "gradelens/json_io.hpp"
#include "gradelens/validation.hpp"

namespace gradelens {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

const ClassSection& require_class(const State& s, const std::string& id) {
  const auto* cls = s.find_class(id);
  if (cls == nullptr) fail(Errc::UnknownClass, "unknown class '" + id + "'");
  return *cls;
}

void require_enrolled(const ClassSection& cls, const std::string& student) {
  if (!cls.roster.contains(student)) {
    fail(Errc::NotEnrolled, "student '" + student + "' is not enrolled in '" +
                                cls.class_id + "'");
  }
}

}  // namespace

void validate_rubric(const State& state, const Rubric& rubric) {
  if (rubric.title.empty()) fail(Errc::ValidationError, "rubric title is empty");
  if (rubric.criteria.empty()) {
    fail(Errc::EmptyCriteria, "a rubric needs at least one criterion");
  }
  std::set<std::string> ids;
  for (const auto& c : rubric.criteria) {
    if (c.criterion_id.empty() || !ids.insert(c.criterion_id).second) {
      fail(Errc::ValidationError,
           "criterion ids must be non-empty and unique within the rubric");
    }
    if (c.max_level < c.min_level + 1) {
      fail(Errc::BadLevelRange,
           "criterion '" + c.criterion_id + "' needs max_level > min_level",
           {c.criterion_id});
    }
    if (!finite_positive(c.weight)) {
      fail(Errc::ValidationError,
           "criterion '" + c.criterion_id + "' weight must be positive",
           {c.criterion_id});
    }
    if (!c.level_descriptors.empty() &&
        c.level_descriptors.size() !=
            static_cast<std::size_t>(c.max_level - c.min_level + 1)) {
      fail(Errc::ValidationError,
           "criterion '" + c.criterion_id +
               "' must describe every level or none",
           {c.criterion_id});
    }
    if (c.mappings.empty()) {
      fail(Errc::UnmappedCriterion,
           "criterion '" + c.criterion_id + "' maps to no outcome",
           {c.criterion_id});
    }
    std::set<std::string> codes;
    for (const auto& m : c.mappings) {
      if (!state.outcome_code_exists(m.outcome_code)) {
        fail(Errc::UnknownOutcome, "unknown outcome '" + m.outcome_code + "'",
             {c.criterion_id});
      }
      if (!finite_positive(m.map_weight)) {
        fail(Errc::ValidationError, "map_weight must be positive",
             {c.criterion_id});
      }
      if (!codes.insert(m.outcome_code).second) {
        fail(Errc::ValidationError,
             "criterion '" + c.criterion_id + "' maps '" + m.outcome_code +
                 "' twice",
             {c.criterion_id});
      }
    }
  }
}

void validate_levels(const Rubric& rubric,
                     const std::map<std::string, int>& levels) {
  for (const auto& [id, _] : levels) {
    if (rubric.find_criterion(id) == nullptr) {
      fail(Errc::ValidationError, "criterion '" + id + "' is not in rubric '" +
                                      rubric.rubric_id + "'",
           {id});
    }
  }
  for (const auto& c : rubric.criteria) {
    auto it = levels.find(c.criterion_id);
    if (it == levels.end()) {
      fail(Errc::ValidationError,
           "no level chosen for criterion '" + c.criterion_id + "'",
           {c.criterion_id});
    }
    if (it->second < c.min_level || it->second > c.max_level) {
      fail(Errc::OutOfRange,
           "level " + std::to_string(it->second) + " outside [" +
               std::to_string(c.min_level) + ", " +
               std::to_string(c.max_level) + "] for criterion '" +
               c.criterion_id + "'",
           {c.criterion_id});
    }
  }
}

std::string conflict_key(const Change& change) {
  return std::visit(
      Overloaded{
          [](const PutUser& c) { return "user:" + c.user.user_id; },
          [](const PutOutcome& c) {
            return "outcome:" + c.outcome.outcome_code + "@" +
                   c.outcome.curriculum_version;
          },
          [](const PutCourse& c) { return "course:" + c.course.course_code; },
          [](const CreateClass& c) { return "class:" + c.section.class_id; },
          [](const EnrollStudent& c) {
            return "roster:" + c.class_id + ":" + c.student_id;
          },
          [](const CreateRubric& c) { return "rubric:" + c.rubric.rubric_id; },
          [](const PutSkill& c) {
            return "skill:" + c.skill.course_code + ":" + c.skill.name;
          },
          [](const AddSkillRating& c) {
            return "rating:" + c.rating.student_id + ":" + c.rating.skill_id +
                   ":" + c.rating.class_id;
          },
          [](const SetGradeComponents& c) {
            return "components:" + c.class_id;
          },
          [](const PutGradeItem& c) { return "item:" + c.item.item_id; },
          [](const AddScore& c) {
            return "score:" + c.entry.student_id + ":" + c.entry.item_id;
          },
          [](const AddEvaluation& c) {
            return "evaluation:" + c.record.evaluation_id;
          },
          [](const PutSettings&) { return std::string("settings"); },
      },
      change);
}

void validate_change(const State& s, const Change& change) {
  std::visit(
      Overloaded{
          [&](const PutUser& c) {
            const auto& u = c.user;
            if (u.user_id.empty() || u.display_name.empty()) {
              fail(Errc::ValidationError, "user id and name are required");
            }
            if (const auto* prev = s.find_user(u.user_id);
                prev != nullptr && prev->role != u.role) {
              fail(Errc::ValidationError, "an account's role cannot change");
            }
          },
          [&](const PutOutcome& c) {
            const auto& o = c.outcome;
            if (o.outcome_code.empty() || o.curriculum_version.empty()) {
              fail(Errc::ValidationError,
                   "outcome code and curriculum version are required");
            }
            if (o.graduate_attribute.empty()) {
              fail(Errc::EmptyAttribute, "graduate attribute is empty");
            }
          },
          [&](const PutCourse& c) {
            const auto& k = c.course;
            if (k.course_code.empty() || k.title.empty()) {
              fail(Errc::ValidationError, "course code and title are required");
            }
            if (!std::isfinite(k.units) || k.units < 0.0) {
              fail(Errc::ValidationError, "course units must be non-negative");
            }
          },
          [&](const CreateClass& c) {
            const auto& cls = c.section;
            if (cls.class_id.empty() || cls.term.empty()) {
              fail(Errc::ValidationError, "class id and term are required");
            }
            if (s.find_class(cls.class_id) != nullptr) {
              fail(Errc::DuplicateCode,
                   "class '" + cls.class_id + "' already exists");
            }
            if (s.find_course(cls.course_code) == nullptr) {
              fail(Errc::UnknownCourse,
                   "unknown course '" + cls.course_code + "'");
            }
            const auto* inst = s.find_user(cls.instructor_id);
            if (inst == nullptr) {
              fail(Errc::UnknownUser,
                   "unknown user '" + cls.instructor_id + "'");
            }
            if (inst->role != Role::Instructor) {
              fail(Errc::NotAnInstructor,
                   "user '" + cls.instructor_id + "' is not an instructor");
            }
            if (!cls.roster.empty()) {
              fail(Errc::ValidationError, "new classes start with no roster");
            }
          },
          [&](const EnrollStudent& c) {
            const auto& cls = require_class(s, c.class_id);
            const auto* st = s.find_user(c.student_id);
            if (st == nullptr) {
              fail(Errc::UnknownUser, "unknown user '" + c.student_id + "'");
            }
            if (st->role != Role::Student) {
              fail(Errc::NotAStudent,
                   "user '" + c.student_id + "' is not a student");
            }
            if (cls.roster.contains(c.student_id)) {
              fail(Errc::AlreadyEnrolled, "student '" + c.student_id +
                                              "' is already enrolled");
            }
          },
          [&](const CreateRubric& c) {
            if (c.rubric.rubric_id.empty()) {
              fail(Errc::ValidationError, "rubric id is required");
            }
            if (s.find_rubric(c.rubric.rubric_id) != nullptr) {
              fail(Errc::DuplicateCode, "rubrics are immutable; '" +
                                            c.rubric.rubric_id +
                                            "' already exists");
            }
            validate_rubric(s, c.rubric);
          },
          [&](const PutSkill& c) {
            const auto& k = c.skill;
            if (k.skill_id.empty() || k.name.empty()) {
              fail(Errc::ValidationError, "skill id and name are required");
            }
            if (s.find_course(k.course_code) == nullptr) {
              fail(Errc::UnknownCourse, "unknown course '" + k.course_code + "'");
            }
            for (const auto& [id, other] : s.skills) {
              if (id != k.skill_id && other.name == k.name &&
                  other.course_code == k.course_code) {
                fail(Errc::DuplicateCode, "skill '" + k.name +
                                              "' already exists for course '" +
                                              k.course_code + "'");
              }
            }
          },
          [&](const AddSkillRating& c) {
            const auto& r = c.rating;
            const auto* skill = s.find_skill(r.skill_id);
            if (skill == nullptr) {
              fail(Errc::UnknownSkill, "unknown skill '" + r.skill_id + "'");
            }
            const auto& cls = require_class(s, r.class_id);
            if (skill->course_code != cls.course_code) {
              fail(Errc::ValidationError,
                   "skill '" + r.skill_id + "' belongs to another course");
            }
            require_enrolled(cls, r.student_id);
            if (!(r.score >= 0.0 && r.score <= 100.0)) {
              fail(Errc::OutOfRange, "skill score must lie in [0, 100]");
            }
          },
          [&](const SetGradeComponents& c) {
            require_class(s, c.class_id);
            std::set<std::string> names;
            std::set<std::string> ids;
            for (const auto& gc : c.components) {
              if (gc.class_id != c.class_id || gc.component_id.empty()) {
                fail(Errc::ValidationError, "component ids must be set");
              }
              if (gc.name.empty() || !names.insert(gc.name).second ||
                  !ids.insert(gc.component_id).second) {
                fail(Errc::ValidationError,
                     "component names must be non-empty and unique");
              }
              if (!(std::isfinite(gc.weight) && gc.weight > 0.0 &&
                    gc.weight <= 1.0)) {
                fail(Errc::ValidationError,
                     "component weight must lie in (0, 1]", {gc.name});
              }
            }
          },
          [&](const PutGradeItem& c) {
            const auto& item = c.item;
            if (item.item_id.empty() || item.title.empty()) {
              fail(Errc::ValidationError, "item id and title are required");
            }
            require_class(s, item.class_id);
            bool found = false;
            if (auto it = s.grade_components.find(item.class_id);
                it != s.grade_components.end()) {
              for (const auto& gc : it->second) {
                found = found || gc.component_id == item.component_id;
              }
            }
            if (!found) {
              fail(Errc::UnknownComponent,
                   "unknown component '" + item.component_id + "'");
            }
            if (!finite_positive(item.max_points)) {
              fail(Errc::ValidationError, "max_points must be positive");
            }
          },
          [&](const AddScore& c) {
            const auto& e = c.entry;
            const auto* item = s.find_item(e.item_id);
            if (item == nullptr) {
              fail(Errc::UnknownItem, "unknown item '" + e.item_id + "'");
            }
            require_enrolled(require_class(s, item->class_id), e.student_id);
            if (!(e.raw_score >= 0.0 && e.raw_score <= item->max_points)) {
              fail(Errc::OutOfRange, "raw score must lie in [0, max_points]");
            }
          },
          [&](const AddEvaluation& c) {
            const auto& ev = c.record;
            if (ev.evaluation_id.empty() ||
                s.evaluations.contains(ev.evaluation_id)) {
              fail(Errc::ValidationError, "evaluation id missing or reused");
            }
            const auto& cls = require_class(s, ev.class_id);
            const auto* rubric = s.find_rubric(ev.rubric_id);
            if (rubric == nullptr) {
              fail(Errc::UnknownRubric, "unknown rubric '" + ev.rubric_id + "'");
            }
            require_enrolled(cls, ev.student_id);
            if (s.find_user(ev.evaluator_id) == nullptr) {
              fail(Errc::UnknownUser, "unknown evaluator");
            }
            validate_levels(*rubric, ev.levels);
          },
          [&](const PutSettings& c) { c.settings.validate(); },
      },
      change);
}

void apply_change(State& s, const Change& change, std::uint64_t commit_id) {
  std::visit(
      Overloaded{
          [&](const PutUser& c) { s.users[c.user.user_id] = c.user; },
          [&](const PutOutcome& c) {
            s.outcomes[{c.outcome.outcome_code, c.outcome.curriculum_version}] =
                c.outcome;
          },
          [&](const PutCourse& c) { s.courses[c.course.course_code] = c.course; },
          [&](const CreateClass& c) {
            s.classes[c.section.class_id] = c.section;
          },
          [&](const EnrollStudent& c) {
            s.classes.at(c.class_id).roster.insert(c.student_id);
          },
          [&](const CreateRubric& c) {
            s.rubrics[c.rubric.rubric_id] = c.rubric;
          },
          [&](const PutSkill& c) { s.skills[c.skill.skill_id] = c.skill; },
          [&](const AddSkillRating& c) { s.skill_ratings.push_back(c.rating); },
          [&](const SetGradeComponents& c) {
            s.grade_components[c.class_id] = c.components;
          },
          [&](const PutGradeItem& c) { s.grade_items[c.item.item_id] = c.item; },
          [&](const AddScore& c) { s.score_history.push_back(c.entry); },
          [&](const AddEvaluation& c) {
            s.evaluations[c.record.evaluation_id] = c.record;
          },
          [&](const PutSettings& c) { s.settings = c.settings; },
      },
      change);
  s.key_versions[conflict_key(change)] = commit_id;
}

Json change_to_json(const Change& change) {
  return std::visit(
      Overloaded{
          [](const PutUser& c) {
            return Json{{"type", "PutUser"}, {"user", c.user}};
          },
          [](const PutOutcome& c) {
            return Json{{"type", "PutOutcome"}, {"outcome", c.outcome}};
          },
          [](const PutCourse& c) {
            return Json{{"type", "PutCourse"}, {"course", c.course}};
          },
          [](const CreateClass& c) {
            return Json{{"type", "CreateClass"}, {"section", c.section}};
          },
          [](const EnrollStudent& c) {
            return Json{{"type", "EnrollStudent"},
                        {"class_id", c.class_id},
                        {"student_id", c.student_id}};
          },
          [](const CreateRubric& c) {
            return Json{{"type", "CreateRubric"}, {"rubric", c.rubric}};
          },
          [](const PutSkill& c) {
            return Json{{"type", "PutSkill"}, {"skill", c.skill}};
          },
          [](const AddSkillRating& c) {
            return Json{{"type", "AddSkillRating"}, {"rating", c.rating}};
          },
          [](const SetGradeComponents& c) {
            return Json{{"type", "SetGradeComponents"},
                        {"class_id", c.class_id},
                        {"components", c.components}};
          },
          [](const PutGradeItem& c) {
            return Json{{"type", "PutGradeItem"}, {"item", c.item}};
          },
          [](const AddScore& c) {
            return Json{{"type", "AddScore"}, {"entry", c.entry}};
          },
          [](const AddEvaluation& c) {
            return Json{{"type", "AddEvaluation"}, {"record", c.record}};
          },
          [](const PutSettings& c) {
            return Json{{"type", "PutSettings"},
                        {"settings", settings_to_json(c.settings)}};
          },
      },
      change);
}

Change change_from_json(const Json& j) {
  const auto type = j.at("type").get<std::string>();
  if (type == "PutUser") return PutUser{j.at("user").get<UserAccount>()};
  if (type == "PutOutcome")
    return PutOutcome{j.at("outcome").get<ProgramOutcome>()};
  if (type == "PutCourse") return PutCourse{j.at("course").get<Course>()};
  if (type == "CreateClass")
    return CreateClass{j.at("section").get<ClassSection>()};
  if (type == "EnrollStudent")
    return EnrollStudent{j.at("class_id").get<std::string>(),
                         j.at("student_id").get<std::string>()};
  if (type == "CreateRubric") return CreateRubric{j.at("rubric").get<Rubric>()};
  if (type == "PutSkill") return PutSkill{j.at("skill").get<Skill>()};
  if (type == "AddSkillRating")
    return AddSkillRating{j.at("rating").get<SkillRating>()};
  if (type == "SetGradeComponents")
    return SetGradeComponents{
        j.at("class_id").get<std::string>(),
        j.at("components").get<std::vector<GradeComponent>>()};
  if (type == "PutGradeItem") return PutGradeItem{j.at("item").get<GradeItem>()};
  if (type == "AddScore") return AddScore{j.at("entry").get<ScoreEntry>()};
  if (type == "AddEvaluation")
    return AddEvaluation{j.at("record").get<EvaluationRecord>()};
  if (type == "PutSettings")
    return PutSettings{settings_from_json(j.at("settings"))};
  fail(Errc::CorruptJournal, "unknown change type '" + type + "'");
}

Transaction::Transaction(std::shared_ptr<const State> base, Timestamp now)
    : base_(std::move(base)), working_(*base_), now_(now) {}

void Transaction::stage(Change change) {
  validate_change(working_, change);
  apply_change(working_, change, base_->version + 1);
  changes_.push_back(std::move(change));
}

}  // namespace gradelens
