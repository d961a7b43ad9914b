#include <ctime>

#include "gradelens/error.hpp"
#include "gradelens/json_io.hpp"
#include "gradelens/model.hpp"
#include "gradelens/state.hpp"

namespace gradelens {

std::string_view to_string(Role role) noexcept {
  switch (role) {
    case Role::DepartmentHead: return "DepartmentHead";
    case Role::Instructor: return "Instructor";
    case Role::Student: return "Student";
  }
  return "Student";
}

Role parse_role(std::string_view text) {
  for (Role r : kAllRoles) {
    if (to_string(r) == text) return r;
  }
  fail(Errc::ValidationError, "unknown role '" + std::string(text) + "'");
}

std::string format_timestamp(Timestamp ts) {
  const std::time_t secs = static_cast<std::time_t>(ts / 1000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf,
                static_cast<int>(((ts % 1000) + 1000) % 1000));
  return out;
}

const Criterion* Rubric::find_criterion(std::string_view id) const {
  for (const auto& c : criteria) {
    if (c.criterion_id == id) return &c;
  }
  return nullptr;
}

void to_json(Json& j, const UserAccount& v) {
  j = Json{{"user_id", v.user_id},     {"display_name", v.display_name},
           {"role", to_string(v.role)}, {"credential", v.credential},
           {"active", v.active},        {"email", v.email}};
}
void from_json(const Json& j, UserAccount& v) {
  j.at("user_id").get_to(v.user_id);
  j.at("display_name").get_to(v.display_name);
  v.role = parse_role(j.at("role").get<std::string>());
  v.credential = j.value("credential", "");
  v.active = j.value("active", true);
  v.email = j.value("email", "");
}

Json public_json(const UserAccount& user) {
  return Json{{"user_id", user.user_id},
              {"display_name", user.display_name},
              {"role", to_string(user.role)},
              {"active", user.active},
              {"email", user.email}};
}

void to_json(Json& j, const ProgramOutcome& v) {
  j = Json{{"outcome_code", v.outcome_code},
           {"graduate_attribute", v.graduate_attribute},
           {"curriculum_version", v.curriculum_version},
           {"active", v.active}};
}
void from_json(const Json& j, ProgramOutcome& v) {
  j.at("outcome_code").get_to(v.outcome_code);
  j.at("graduate_attribute").get_to(v.graduate_attribute);
  j.at("curriculum_version").get_to(v.curriculum_version);
  v.active = j.value("active", true);
}

void to_json(Json& j, const Course& v) {
  j = Json{{"course_code", v.course_code},
           {"title", v.title},
           {"units", v.units},
           {"archived", v.archived}};
}
void from_json(const Json& j, Course& v) {
  j.at("course_code").get_to(v.course_code);
  j.at("title").get_to(v.title);
  j.at("units").get_to(v.units);
  v.archived = j.value("archived", false);
}

void to_json(Json& j, const ClassSection& v) {
  j = Json{{"class_id", v.class_id},
           {"course_code", v.course_code},
           {"term", v.term},
           {"instructor_id", v.instructor_id},
           {"roster", v.roster}};
}
void from_json(const Json& j, ClassSection& v) {
  j.at("class_id").get_to(v.class_id);
  j.at("course_code").get_to(v.course_code);
  j.at("term").get_to(v.term);
  j.at("instructor_id").get_to(v.instructor_id);
  v.roster = j.value("roster", std::set<std::string>{});
}

void to_json(Json& j, const OutcomeMapping& v) {
  j = Json{{"outcome_code", v.outcome_code}, {"map_weight", v.map_weight}};
}
void from_json(const Json& j, OutcomeMapping& v) {
  j.at("outcome_code").get_to(v.outcome_code);
  v.map_weight = j.value("map_weight", 1.0);
}

void to_json(Json& j, const Criterion& v) {
  j = Json{{"criterion_id", v.criterion_id},
           {"description", v.description},
           {"min_level", v.min_level},
           {"max_level", v.max_level},
           {"level_descriptors", v.level_descriptors},
           {"weight", v.weight},
           {"mappings", v.mappings}};
}
void from_json(const Json& j, Criterion& v) {
  v.criterion_id = j.value("criterion_id", "");
  v.description = j.value("description", "");
  v.min_level = j.value("min_level", 1);
  v.max_level = j.value("max_level", 4);
  v.level_descriptors =
      j.value("level_descriptors", std::vector<std::string>{});
  v.weight = j.value("weight", 1.0);
  v.mappings = j.value("mappings", std::vector<OutcomeMapping>{});
}

void to_json(Json& j, const Rubric& v) {
  j = Json{{"rubric_id", v.rubric_id},
           {"title", v.title},
           {"criteria", v.criteria},
           {"created_by", v.created_by}};
}
void from_json(const Json& j, Rubric& v) {
  v.rubric_id = j.value("rubric_id", "");
  j.at("title").get_to(v.title);
  j.at("criteria").get_to(v.criteria);
  v.created_by = j.value("created_by", "");
}

void to_json(Json& j, const Skill& v) {
  j = Json{{"skill_id", v.skill_id},
           {"name", v.name},
           {"course_code", v.course_code}};
}
void from_json(const Json& j, Skill& v) {
  j.at("skill_id").get_to(v.skill_id);
  j.at("name").get_to(v.name);
  j.at("course_code").get_to(v.course_code);
}

void to_json(Json& j, const SkillRating& v) {
  j = Json{{"student_id", v.student_id}, {"skill_id", v.skill_id},
           {"class_id", v.class_id},     {"score", v.score},
           {"recorded_at", v.recorded_at}};
}
void from_json(const Json& j, SkillRating& v) {
  j.at("student_id").get_to(v.student_id);
  j.at("skill_id").get_to(v.skill_id);
  j.at("class_id").get_to(v.class_id);
  j.at("score").get_to(v.score);
  j.at("recorded_at").get_to(v.recorded_at);
}

void to_json(Json& j, const GradeComponent& v) {
  j = Json{{"component_id", v.component_id},
           {"class_id", v.class_id},
           {"name", v.name},
           {"weight", v.weight}};
}
void from_json(const Json& j, GradeComponent& v) {
  j.at("component_id").get_to(v.component_id);
  j.at("class_id").get_to(v.class_id);
  j.at("name").get_to(v.name);
  j.at("weight").get_to(v.weight);
}

void to_json(Json& j, const GradeItem& v) {
  j = Json{{"item_id", v.item_id},
           {"class_id", v.class_id},
           {"component_id", v.component_id},
           {"title", v.title},
           {"max_points", v.max_points}};
}
void from_json(const Json& j, GradeItem& v) {
  j.at("item_id").get_to(v.item_id);
  j.at("class_id").get_to(v.class_id);
  j.at("component_id").get_to(v.component_id);
  j.at("title").get_to(v.title);
  j.at("max_points").get_to(v.max_points);
}

void to_json(Json& j, const ScoreEntry& v) {
  j = Json{{"student_id", v.student_id},
           {"item_id", v.item_id},
           {"raw_score", v.raw_score},
           {"recorded_at", v.recorded_at}};
}
void from_json(const Json& j, ScoreEntry& v) {
  j.at("student_id").get_to(v.student_id);
  j.at("item_id").get_to(v.item_id);
  j.at("raw_score").get_to(v.raw_score);
  j.at("recorded_at").get_to(v.recorded_at);
}

void to_json(Json& j, const EvaluationRecord& v) {
  j = Json{{"evaluation_id", v.evaluation_id}, {"class_id", v.class_id},
           {"rubric_id", v.rubric_id},         {"student_id", v.student_id},
           {"levels", v.levels},               {"evaluator_id", v.evaluator_id},
           {"recorded_at", v.recorded_at}};
}
void from_json(const Json& j, EvaluationRecord& v) {
  j.at("evaluation_id").get_to(v.evaluation_id);
  j.at("class_id").get_to(v.class_id);
  j.at("rubric_id").get_to(v.rubric_id);
  j.at("student_id").get_to(v.student_id);
  j.at("levels").get_to(v.levels);
  j.at("evaluator_id").get_to(v.evaluator_id);
  j.at("recorded_at").get_to(v.recorded_at);
}

void to_json(Json& j, const Band& v) {
  j = Json{{"label", v.label}, {"lower", v.lower}};
}
void from_json(const Json& j, Band& v) {
  j.at("label").get_to(v.label);
  j.at("lower").get_to(v.lower);
}

void to_json(Json& j, const BandScheme& v) {
  j = Json{{"lo", v.lo}, {"hi", v.hi}, {"bands", v.bands}};
}
void from_json(const Json& j, BandScheme& v) {
  j.at("lo").get_to(v.lo);
  j.at("hi").get_to(v.hi);
  j.at("bands").get_to(v.bands);
}

void to_json(Json& j, const GradeBand& v) {
  j = Json{{"lower", v.lower}, {"label", v.label}};
}
void from_json(const Json& j, GradeBand& v) {
  j.at("lower").get_to(v.lower);
  j.at("label").get_to(v.label);
}

void to_json(Json& j, const GradeScale& v) { j = Json{{"bands", v.bands}}; }
void from_json(const Json& j, GradeScale& v) { j.at("bands").get_to(v.bands); }

// --- State -----------------------------------------------------------------

std::string make_id(std::string_view prefix, std::size_t n) {
  char digits[24];
  std::snprintf(digits, sizeof digits, "%06zu", n);
  return std::string(prefix) + digits;
}

const UserAccount* State::find_user(const std::string& id) const {
  auto it = users.find(id);
  return it == users.end() ? nullptr : &it->second;
}
const Course* State::find_course(const std::string& code) const {
  auto it = courses.find(code);
  return it == courses.end() ? nullptr : &it->second;
}
const ClassSection* State::find_class(const std::string& id) const {
  auto it = classes.find(id);
  return it == classes.end() ? nullptr : &it->second;
}
const Rubric* State::find_rubric(const std::string& id) const {
  auto it = rubrics.find(id);
  return it == rubrics.end() ? nullptr : &it->second;
}
const Skill* State::find_skill(const std::string& id) const {
  auto it = skills.find(id);
  return it == skills.end() ? nullptr : &it->second;
}
const GradeItem* State::find_item(const std::string& id) const {
  auto it = grade_items.find(id);
  return it == grade_items.end() ? nullptr : &it->second;
}
bool State::outcome_code_exists(const std::string& code) const {
  auto it = outcomes.lower_bound({code, std::string()});
  return it != outcomes.end() && it->first.first == code;
}

namespace {

template <typename Map>
Json values_array(const Map& m) {
  Json arr = Json::array();
  for (const auto& [_, v] : m) arr.push_back(v);
  return arr;
}

}  // namespace

Json state_to_json(const State& s) {
  Json components = Json::object();
  for (const auto& [cls, list] : s.grade_components) components[cls] = list;
  return Json{{"version", s.version},
              {"users", values_array(s.users)},
              {"outcomes", values_array(s.outcomes)},
              {"courses", values_array(s.courses)},
              {"classes", values_array(s.classes)},
              {"rubrics", values_array(s.rubrics)},
              {"skills", values_array(s.skills)},
              {"skill_ratings", s.skill_ratings},
              {"grade_components", components},
              {"grade_items", values_array(s.grade_items)},
              {"score_history", s.score_history},
              {"evaluations", values_array(s.evaluations)},
              {"settings", settings_to_json(s.settings)}};
}

State state_from_json(const Json& doc) {
  State s;
  s.version = doc.at("version").get<std::uint64_t>();
  for (const auto& u : doc.at("users")) {
    auto v = u.get<UserAccount>();
    s.users.emplace(v.user_id, std::move(v));
  }
  for (const auto& o : doc.at("outcomes")) {
    auto v = o.get<ProgramOutcome>();
    s.outcomes.emplace(OutcomeKey{v.outcome_code, v.curriculum_version}, v);
  }
  for (const auto& c : doc.at("courses")) {
    auto v = c.get<Course>();
    s.courses.emplace(v.course_code, std::move(v));
  }
  for (const auto& c : doc.at("classes")) {
    auto v = c.get<ClassSection>();
    s.classes.emplace(v.class_id, std::move(v));
  }
  for (const auto& r : doc.at("rubrics")) {
    auto v = r.get<Rubric>();
    s.rubrics.emplace(v.rubric_id, std::move(v));
  }
  for (const auto& k : doc.at("skills")) {
    auto v = k.get<Skill>();
    s.skills.emplace(v.skill_id, std::move(v));
  }
  doc.at("skill_ratings").get_to(s.skill_ratings);
  for (const auto& [cls, list] : doc.at("grade_components").items()) {
    s.grade_components[cls] = list.get<std::vector<GradeComponent>>();
  }
  for (const auto& i : doc.at("grade_items")) {
    auto v = i.get<GradeItem>();
    s.grade_items.emplace(v.item_id, std::move(v));
  }
  doc.at("score_history").get_to(s.score_history);
  for (const auto& e : doc.at("evaluations")) {
    auto v = e.get<EvaluationRecord>();
    s.evaluations.emplace(v.evaluation_id, std::move(v));
  }
  s.settings = settings_from_json(doc.at("settings"));
  return s;
}

}  // namespace gradelens
