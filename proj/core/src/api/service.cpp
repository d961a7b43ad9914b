#include "gradelens/api/service.hpp"

#include <charconv>
#include <cmath>
#include <functional>

#include "gradelens/analytics.hpp"
#include "gradelens/csv_import.hpp"
#include "gradelens/domain.hpp"
#include "gradelens/error.hpp"
#include "gradelens/gradebook.hpp"
#include "gradelens/json_io.hpp"
#include "gradelens/reports.hpp"

namespace gradelens::api {

struct ApiService::Context {
  Store& store;
  SessionManager& sessions;
  const HttpRequest& req;
  PathParams params;
  Actor actor;

  const std::string& param(const std::string& name) const {
    return params.at(name);
  }

  Json body() const {
    Json doc = parse_body(req.body);
    if (!doc.is_object()) fail(Errc::BadBody, "request body must be an object");
    return doc;
  }

  std::string query(const std::string& name) const {
    auto v = req.query_param(name);
    if (!v || v->empty()) {
      fail(Errc::ValidationError, "query parameter '" + name + "' is required");
    }
    return *v;
  }

  double theta(const State& state) const {
    auto v = req.query_param("theta");
    if (!v) return state.settings.attainment_threshold;
    double out = 0.0;
    auto res = std::from_chars(v->data(), v->data() + v->size(), out);
    if (res.ec != std::errc() || res.ptr != v->data() + v->size()) {
      fail(Errc::ValidationError, "theta must be a number");
    }
    validate_threshold(out);
    return out;
  }
};

struct ApiService::Route {
  Endpoint endpoint;
  std::function<HttpResponse(Context&)> handler;
};

namespace {

using Context = ApiService::Context;

HttpResponse json_response(const Json& doc, int status = 200) {
  return {status, "application/json", canonical_dump(doc)};
}

HttpResponse error_response(Errc code, const std::string& message,
                            const std::vector<std::string>& details = {}) {
  return json_response(
      Json{{"error",
            Json{{"code", machine_code(code)},
                 {"message", message},
                 {"details", details}}}},
      http_status(code));
}

template <typename T>
T field(const Json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end()) {
    fail(Errc::BadBody, std::string("missing field '") + key + "'");
  }
  try {
    return it->get<T>();
  } catch (const Json::exception&) {
    fail(Errc::BadBody, std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
T field_or(const Json& body, const char* key, T fallback) {
  return body.contains(key) ? field<T>(body, key) : fallback;
}

double number(const Json& body, const char* key) {
  const double v = field<double>(body, key);
  if (!std::isfinite(v)) fail(Errc::BadBody, std::string(key) + " is not finite");
  return v;
}

Json array_of(const auto& items) {
  Json out = Json::array();
  for (const auto& item : items) out.push_back(item);
  return out;
}

void require_class_exists(const State& s, const std::string& id) {
  if (s.find_class(id) == nullptr) {
    fail(Errc::UnknownClass, "unknown class '" + id + "'");
  }
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma - start);
    if (!piece.empty()) out.push_back(piece);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// --- handlers ---------------------------------------------------------------

HttpResponse health(Context&) { return json_response(Json{{"status", "ok"}}); }

HttpResponse issue_token(Context& ctx) {
  const Json body = ctx.body();
  const auto user = field<std::string>(body, "user");
  const auto password = field<std::string>(body, "password");
  const auto snap = ctx.store.snapshot();
  const auto token = authenticate(*snap, ctx.sessions, user, password);
  return json_response(Json{{"token", token.token},
                            {"expires_at", format_timestamp(token.expires_at)},
                            {"user_id", token.user_id},
                            {"role", to_string(token.role)}});
}

HttpResponse get_users(Context& ctx) {
  Json users = Json::array();
  for (const auto& u : list_users(*ctx.store.snapshot(), ctx.actor)) {
    users.push_back(public_json(u));
  }
  return json_response(Json{{"users", users}});
}

HttpResponse post_user(Context& ctx) {
  const Json body = ctx.body();
  const auto name = field<std::string>(body, "name");
  const auto role = parse_role(field<std::string>(body, "role"));
  const auto password = field<std::string>(body, "password");
  const auto email = field_or<std::string>(body, "email", "");
  const auto user = ctx.store.transact([&](Transaction& tx) {
    return create_user(tx, ctx.actor, name, role, password, email);
  });
  return json_response(public_json(user), 201);
}

HttpResponse put_password(Context& ctx) {
  const Json body = ctx.body();
  const auto password = field<std::string>(body, "password");
  ctx.store.transact([&](Transaction& tx) {
    set_password(tx, ctx.actor, ctx.param("id"), password);
  });
  return json_response(Json{{"user_id", ctx.param("id")}, {"active", true}});
}

HttpResponse get_outcomes(Context& ctx) {
  const auto snap = ctx.store.snapshot();
  return json_response(Json{
      {"outcomes",
       array_of(list_outcomes(*snap, ctx.req.query_param("curriculum")))}});
}

HttpResponse upsert_outcome(Context& ctx, const std::string& code) {
  const Json body = ctx.body();
  const auto attribute = field<std::string>(body, "graduate_attribute");
  const auto version = field<std::string>(body, "curriculum_version");
  std::optional<bool> active;
  if (body.contains("active")) active = field<bool>(body, "active");
  bool created = false;
  const auto outcome = ctx.store.transact([&](Transaction& tx) {
    created = !tx.state().outcomes.contains({code, version});
    return upsert_program_outcome(tx, ctx.actor, code, attribute, version,
                                  active);
  });
  return json_response(Json(outcome), created ? 201 : 200);
}

HttpResponse post_outcome(Context& ctx) {
  return upsert_outcome(ctx, field<std::string>(ctx.body(), "outcome_code"));
}

HttpResponse put_outcome(Context& ctx) {
  return upsert_outcome(ctx, ctx.param("code"));
}

HttpResponse get_courses(Context& ctx) {
  const auto snap = ctx.store.snapshot();
  Json courses = Json::array();
  for (const auto& [_, c] : snap->courses) courses.push_back(c);
  return json_response(Json{{"courses", courses}});
}

HttpResponse post_course(Context& ctx) {
  const Json body = ctx.body();
  const auto code = field<std::string>(body, "course_code");
  const auto title = field<std::string>(body, "title");
  const double units = number(body, "units");
  const auto course = ctx.store.transact([&](Transaction& tx) {
    return create_course(tx, ctx.actor, code, title, units);
  });
  return json_response(Json(course), 201);
}

HttpResponse get_classes(Context& ctx) {
  const auto snap = ctx.store.snapshot();
  return json_response(
      Json{{"classes", array_of(list_classes(*snap, ctx.actor))}});
}

HttpResponse post_class(Context& ctx) {
  const Json body = ctx.body();
  const auto course = field<std::string>(body, "course_code");
  const auto term = field<std::string>(body, "term");
  const auto instructor = field<std::string>(body, "instructor_id");
  const auto cls = ctx.store.transact([&](Transaction& tx) {
    return create_class_section(tx, ctx.actor, course, term, instructor);
  });
  return json_response(Json(cls), 201);
}

HttpResponse post_enroll(Context& ctx) {
  const auto student = field<std::string>(ctx.body(), "student_id");
  const auto& id = ctx.param("id");
  const auto size = ctx.store.transact([&](Transaction& tx) {
    return enroll_student(tx, ctx.actor, id, student);
  });
  return json_response(Json{{"class_id", id}, {"roster_size", size}});
}

Json import_json(const ImportResult& result, const char* applied_key) {
  Json rejected = Json::array();
  for (const auto& r : result.rejected) {
    rejected.push_back(Json{{"line", r.line}, {"reason", r.reason}});
  }
  return Json{{applied_key, result.applied}, {"rejected", rejected}};
}

HttpResponse post_roster_import(Context& ctx) {
  const auto result = ctx.store.transact([&](Transaction& tx) {
    return import_roster_csv(tx, ctx.actor, ctx.param("id"), ctx.req.body);
  });
  return json_response(import_json(result, "enrolled"));
}

HttpResponse post_components(Context& ctx) {
  const Json body = ctx.body();
  const auto list = field<Json>(body, "components");
  if (!list.is_array()) fail(Errc::BadBody, "components must be an array");
  std::vector<std::pair<std::string, double>> components;
  for (const auto& c : list) {
    if (!c.is_object()) fail(Errc::BadBody, "component must be an object");
    components.emplace_back(field<std::string>(c, "name"), number(c, "weight"));
  }
  const auto out = ctx.store.transact([&](Transaction& tx) {
    return define_grade_components(tx, ctx.actor, ctx.param("id"), components);
  });
  return json_response(Json{{"components", out},
                            {"finalizable", weights_finalizable(out)}});
}

HttpResponse post_item(Context& ctx) {
  const Json body = ctx.body();
  const auto component = field<std::string>(body, "component_id");
  const auto title = field<std::string>(body, "title");
  const double max_points = number(body, "max_points");
  const auto item = ctx.store.transact([&](Transaction& tx) {
    return add_grade_item(tx, ctx.actor, ctx.param("id"), component, title,
                          max_points);
  });
  return json_response(Json(item), 201);
}

HttpResponse post_score(Context& ctx) {
  const Json body = ctx.body();
  const auto student = field<std::string>(body, "student_id");
  const auto item_id = field<std::string>(body, "item_id");
  const double raw = number(body, "raw_score");
  const auto entry = ctx.store.transact([&](Transaction& tx) {
    const auto* item = tx.state().find_item(item_id);
    if (item == nullptr) fail(Errc::UnknownItem, "unknown item '" + item_id + "'");
    if (item->class_id != ctx.param("id")) {
      fail(Errc::ValidationError, "item '" + item_id + "' is not in this class");
    }
    return record_score(tx, ctx.actor, student, item_id, raw);
  });
  return json_response(Json(entry), 201);
}

HttpResponse get_gradebook(Context& ctx) {
  const auto snap = ctx.store.snapshot();
  const auto& id = ctx.param("id");
  Json out = to_json(class_grade_summary(*snap, ctx.actor, id));
  auto it = snap->grade_components.find(id);
  out["components"] = it == snap->grade_components.end()
                          ? Json::array()
                          : Json(it->second);
  Json items = Json::array();
  for (const auto& [_, item] : snap->grade_items) {
    if (item.class_id == id) items.push_back(item);
  }
  out["items"] = items;
  return json_response(out);
}

HttpResponse get_rubrics(Context& ctx) {
  const auto snap = ctx.store.snapshot();
  Json rubrics = Json::array();
  for (const auto& [_, r] : snap->rubrics) rubrics.push_back(r);
  return json_response(Json{{"rubrics", rubrics}});
}

HttpResponse post_rubric(Context& ctx) {
  const Json body = ctx.body();
  const auto title = field<std::string>(body, "title");
  std::vector<Criterion> criteria;
  try {
    criteria = body.at("criteria").get<std::vector<Criterion>>();
  } catch (const Json::exception& e) {
    fail(Errc::BadBody, std::string("malformed criteria: ") + e.what());
  }
  const auto rubric = ctx.store.transact([&](Transaction& tx) {
    return define_rubric(tx, ctx.actor, title, criteria);
  });
  return json_response(Json(rubric), 201);
}

HttpResponse post_evaluation(Context& ctx) {
  const Json body = ctx.body();
  const auto rubric = field<std::string>(body, "rubric_id");
  const auto student = field<std::string>(body, "student_id");
  const auto levels = field<std::map<std::string, int>>(body, "levels");
  const auto ev = ctx.store.transact([&](Transaction& tx) {
    return record_evaluation(tx, ctx.actor, ctx.param("id"), rubric, student,
                             levels);
  });
  return json_response(Json(ev), 201);
}

HttpResponse get_skills(Context& ctx) {
  const auto snap = ctx.store.snapshot();
  return json_response(Json{
      {"skills", array_of(list_skills(*snap, ctx.req.query_param("course")))}});
}

HttpResponse post_skill(Context& ctx) {
  const Json body = ctx.body();
  const auto name = field<std::string>(body, "name");
  const auto course = field<std::string>(body, "course_code");
  const auto skill = ctx.store.transact([&](Transaction& tx) {
    return create_skill(tx, ctx.actor, name, course);
  });
  return json_response(Json(skill), 201);
}

HttpResponse post_skill_rating(Context& ctx) {
  const Json body = ctx.body();
  const auto student = field<std::string>(body, "student_id");
  const auto skill = field<std::string>(body, "skill_id");
  const auto cls = field<std::string>(body, "class_id");
  const double score = number(body, "score");
  const auto rating = ctx.store.transact([&](Transaction& tx) {
    return record_skill_rating(tx, ctx.actor, student, skill, cls, score);
  });
  return json_response(Json(rating), 201);
}

HttpResponse get_student_skills(Context& ctx) {
  const auto snap = ctx.store.snapshot();
  SkillFilter filter{ctx.req.query_param("course"), ctx.req.query_param("class")};
  return json_response(to_json(
      query_student_skills(*snap, ctx.actor, ctx.param("id"), filter)));
}

HttpResponse get_attainment(Context& ctx) {
  const auto snap = ctx.store.snapshot();
  const auto cls = ctx.query("class");
  const auto outcome = ctx.query("outcome");
  require_class_exists(*snap, cls);
  require(ctx.actor, Action::ViewClassAnalytics, Resource::of_class(cls), *snap);
  const double theta = ctx.theta(*snap);
  if (auto student = ctx.req.query_param("student")) {
    return json_response(to_json(student_outcome_attainment(
        *snap, *student, outcome, Scope::of_class(cls), theta)));
  }
  return json_response(to_json(class_attainment_rate(*snap, cls, outcome, theta)));
}

void require_scope(const Context& ctx, const State& state, const Scope& scope) {
  if (scope.kind == Scope::Kind::Class) {
    require_class_exists(state, scope.value);
    require(ctx.actor, Action::ViewClassAnalytics,
            Resource::of_class(scope.value), state);
  } else {
    require(ctx.actor, Action::ViewProgramAnalytics, {}, state);
  }
}

HttpResponse get_distribution(Context& ctx) {
  const auto snap = ctx.store.snapshot();
  const auto outcome = ctx.query("outcome");
  const auto scope = Scope::parse(ctx.query("scope"));
  require_scope(ctx, *snap, scope);
  return json_response(to_json(distribution(
      *snap, scope, outcome, snap->settings.band_scheme, ctx.theta(*snap))));
}

HttpResponse get_rollup(Context& ctx) {
  const auto snap = ctx.store.snapshot();
  require(ctx.actor, Action::ViewProgramAnalytics, {}, *snap);
  return json_response(to_json(program_rollup(
      *snap, ctx.query("curriculum"), ctx.query("from"), ctx.query("to"),
      ctx.theta(*snap), snap->settings.band_scheme)));
}

HttpResponse get_trend(Context& ctx) {
  const auto snap = ctx.store.snapshot();
  require(ctx.actor, Action::ViewProgramAnalytics, {}, *snap);
  return json_response(to_json(
      term_trend(*snap, ctx.query("outcome"), ctx.query("curriculum"),
                 split_commas(ctx.query("terms")), ctx.theta(*snap))));
}

HttpResponse get_skills_summary(Context& ctx) {
  const auto snap = ctx.store.snapshot();
  return json_response(
      to_json(skills_summary(*snap, ctx.actor, ctx.query("class"))));
}

HttpResponse get_student_attainment(Context& ctx) {
  const auto snap = ctx.store.snapshot();
  const auto& id = ctx.param("id");
  require(ctx.actor, Action::ViewStudentRecord, Resource::of_student(id), *snap);
  return json_response(to_json(student_attainment_view(
      *snap, id, ctx.theta(*snap), snap->settings.band_scheme)));
}

HttpResponse get_export(Context& ctx) {
  const auto snap = ctx.store.snapshot();
  const auto format = parse_export_format(ctx.query("format"));
  const auto scope = Scope::parse(ctx.req.query_param("scope").value_or("all"));
  if (scope.kind == Scope::Kind::Class) {
    require_class_exists(*snap, scope.value);
    require(ctx.actor, Action::ExportReport, Resource::of_class(scope.value),
            *snap);
  } else {
    require(ctx.actor, Action::ViewProgramAnalytics, {}, *snap);
  }
  const auto report = build_analytics_report(*snap, scope, ctx.theta(*snap),
                                             snap->settings.band_scheme);
  return {200,
          format == ExportFormat::Csv ? "text/csv" : "application/json",
          render_report(report, format)};
}

HttpResponse get_settings(Context& ctx) {
  return json_response(settings_to_json(ctx.store.snapshot()->settings));
}

HttpResponse put_settings(Context& ctx) {
  const Settings settings = settings_from_json(ctx.body());
  ctx.store.transact([&](Transaction& tx) {
    require(ctx.actor, Action::EditSettings, {}, tx.state());
    tx.stage(PutSettings{settings});
  });
  return json_response(settings_to_json(settings));
}

// Class id of a "/classes/{id}/..." route, for the up-front ownership check.
std::optional<std::string> class_param(const Context& ctx) {
  auto it = ctx.params.find("id");
  if (it == ctx.params.end() || ctx.req.path.find("/classes/") == std::string::npos) {
    return std::nullopt;
  }
  return it->second;
}

}  // namespace

ApiService::ApiService(Store& store, SessionManager& sessions)
    : store_(store), sessions_(sessions) {}

const std::vector<ApiService::Route>& ApiService::routes() {
  using A = Action;
  static const std::vector<Route> kRoutes = {
      {{"GET", "/health", std::nullopt}, health},
      {{"POST", "/auth/token", std::nullopt}, issue_token},
      {{"GET", "/users", A::ListUsers}, get_users},
      {{"POST", "/users", A::CreateUser}, post_user},
      {{"PUT", "/users/{id}/password", A::SetPassword}, put_password},
      {{"GET", "/outcomes", A::ListOutcomes}, get_outcomes},
      {{"POST", "/outcomes", A::EditOutcomes}, post_outcome},
      {{"PUT", "/outcomes/{code}", A::EditOutcomes}, put_outcome},
      {{"GET", "/courses", A::ListCourses}, get_courses},
      {{"POST", "/courses", A::CreateCourse}, post_course},
      {{"GET", "/classes", A::ListClasses}, get_classes},
      {{"POST", "/classes", A::CreateClass}, post_class},
      {{"POST", "/classes/{id}/enroll", A::ManageRoster}, post_enroll},
      {{"POST", "/classes/{id}/roster-import", A::ManageRoster},
       post_roster_import},
      {{"POST", "/classes/{id}/grade-components", A::ManageGradebook},
       post_components},
      {{"POST", "/classes/{id}/items", A::ManageGradebook}, post_item},
      {{"POST", "/classes/{id}/scores", A::ManageGradebook}, post_score},
      {{"GET", "/classes/{id}/gradebook", A::ViewGradebook}, get_gradebook},
      {{"GET", "/rubrics", A::ListRubrics}, get_rubrics},
      {{"POST", "/rubrics", A::CreateRubric}, post_rubric},
      {{"POST", "/classes/{id}/evaluations", A::RecordEvaluation},
       post_evaluation},
      {{"GET", "/skills", A::ListSkills}, get_skills},
      {{"POST", "/skills", A::CreateSkill}, post_skill},
      {{"POST", "/skill-ratings", A::RateSkill}, post_skill_rating},
      {{"GET", "/students/{id}/skills", A::ViewStudentRecord},
       get_student_skills},
      {{"GET", "/students/{id}/attainment", A::ViewStudentRecord},
       get_student_attainment},
      {{"GET", "/analytics/attainment", A::ViewClassAnalytics}, get_attainment},
      {{"GET", "/analytics/distribution", A::ViewClassAnalytics},
       get_distribution},
      {{"GET", "/analytics/rollup", A::ViewProgramAnalytics}, get_rollup},
      {{"GET", "/analytics/trend", A::ViewProgramAnalytics}, get_trend},
      {{"GET", "/analytics/skills", A::ViewClassAnalytics}, get_skills_summary},
      {{"GET", "/reports/export", A::ExportReport}, get_export},
      {{"GET", "/settings", A::ViewSettings}, get_settings},
      {{"PUT", "/settings", A::EditSettings}, put_settings},
  };
  return kRoutes;
}

const std::vector<Endpoint>& ApiService::endpoints() {
  static const std::vector<Endpoint> kEndpoints = [] {
    std::vector<Endpoint> out;
    for (const auto& r : routes()) out.push_back(r.endpoint);
    return out;
  }();
  return kEndpoints;
}

HttpResponse ApiService::handle(const HttpRequest& request) const {
  std::string_view path = request.path;
  if (!path.starts_with(kApiPrefix)) {
    return error_response(Errc::NotFound, "no such endpoint");
  }
  path.remove_prefix(kApiPrefix.size());

  const Route* route = nullptr;
  PathParams params;
  bool path_known = false;
  for (const auto& r : routes()) {
    auto m = match_path(r.endpoint.pattern, path);
    if (!m) continue;
    path_known = true;
    if (r.endpoint.method == request.method) {
      route = &r;
      params = std::move(*m);
      break;
    }
  }
  if (route == nullptr) {
    if (path_known) {
      return json_response(
          Json{{"error", Json{{"code", "method_not_allowed"},
                              {"message", "method not allowed"},
                              {"details", Json::array()}}}},
          405);
    }
    return error_response(Errc::NotFound, "no such endpoint");
  }

  try {
    Context ctx{store_, sessions_, request, std::move(params), {}};
    if (route->endpoint.action) {
      const auto auth = request.header("authorization").value_or("");
      constexpr std::string_view kBearer = "Bearer ";
      std::optional<Session> session;
      if (auth.starts_with(kBearer)) {
        session = sessions_.resolve(auth.substr(kBearer.size()));
      }
      if (!session) {
        fail(Errc::Unauthenticated, "missing, unknown or expired token");
      }
      ctx.actor = Actor{session->user_id, session->role};

      // Role-level denials and class ownership are settled before the body
      // is looked at; finer checks happen inside the operations.
      const Action action = *route->endpoint.action;
      if (PermissionMatrix::rule(ctx.actor.role, action) == Rule::Deny) {
        fail(Errc::Forbidden, std::string(to_string(ctx.actor.role)) +
                                  " may not " + std::string(to_string(action)));
      }
      if (auto cls = class_param(ctx)) {
        const auto snap = store_.snapshot();
        require_class_exists(*snap, *cls);
        require(ctx.actor, action, Resource::of_class(*cls), *snap);
      }
    }
    return route->handler(ctx);
  } catch (const Error& e) {
    return error_response(e.code(), e.what(), e.details());
  } catch (const Json::exception& e) {
    return error_response(Errc::BadBody, e.what());
  } catch (const std::exception& e) {
    return json_response(
        Json{{"error", Json{{"code", "internal"},
                            {"message", e.what()},
                            {"details", Json::array()}}}},
        500);
  }
}

}  // namespace gradelens::api
