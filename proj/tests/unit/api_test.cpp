#include "gradelens/api/service.hpp"

#include <gtest/gtest.h>

#include "checks.hpp"
#include "gradelens/api/http_server.hpp"
#include "gradelens/canonical_json.hpp"
#include "test_util.hpp"

namespace gradelens::api {
namespace {

using gradelens::testing::World;

class ApiTest : public ::testing::Test {
 protected:
  ApiTest() : sessions(w.clock.fn()), api(*w.store, sessions) { w.enroll_all(); }

  HttpResponse call(const std::string& method, const std::string& path,
                    const std::string& token = {}, const std::string& body = {},
                    std::map<std::string, std::string> query = {}) {
    HttpRequest req;
    req.method = method;
    req.path = std::string(kApiPrefix) + path;
    req.query = std::move(query);
    req.body = body;
    if (!token.empty()) req.headers["authorization"] = "Bearer " + token;
    return api.handle(req);
  }

  std::string login(const std::string& user, const std::string& password) {
    const auto res = call("POST", "/auth/token", {},
                          Json{{"user", user}, {"password", password}}.dump());
    EXPECT_EQ(res.status, 200) << res.body;
    return Json::parse(res.body).value("token", "");
  }

  static std::string code_of(const HttpResponse& res) {
    return Json::parse(res.body)["error"]["code"].get<std::string>();
  }

  World w{3};
  SessionManager sessions;
  ApiService api;
};

TEST_F(ApiTest, Health) {
  const auto res = call("GET", "/health");
  EXPECT_EQ(res.status, 200);
  EXPECT_EQ(res.body, R"({"status":"ok"})");
}

TEST_F(ApiTest, LoginSuccessAndUniformFailure) {
  const auto ok = call("POST", "/auth/token", {}, R"({"user":"Reyes","password":"password-123"})");
  ASSERT_EQ(ok.status, 200);
  const Json j = Json::parse(ok.body);
  EXPECT_EQ(j["user_id"], w.reyes.user_id);
  EXPECT_EQ(j["role"], "Instructor");
  EXPECT_EQ(j["token"].get<std::string>().size(), 32u);

  const auto wrong = call("POST", "/auth/token", {}, R"({"user":"Reyes","password":"nope-nope"})");
  const auto unknown = call("POST", "/auth/token", {}, R"({"user":"Nobody","password":"nope-nope"})");
  EXPECT_EQ(wrong.status, 401);
  EXPECT_EQ(unknown.status, 401);
  EXPECT_EQ(wrong.body, unknown.body);
  EXPECT_EQ(wrong.body.find("Reyes"), std::string::npos);
  EXPECT_EQ(wrong.body.find(w.reyes.user_id), std::string::npos);
}

TEST_F(ApiTest, TokenExpiry) {
  const auto token = login("Reyes", "password-123");
  EXPECT_EQ(call("GET", "/classes", token).status, 200);
  w.clock.advance_minutes(479);
  EXPECT_EQ(call("GET", "/classes", token).status, 200);
  w.clock.advance_minutes(2);
  const auto res = call("GET", "/classes", token);
  EXPECT_EQ(res.status, 401);
  EXPECT_EQ(code_of(res), "unauthenticated");
}

TEST_F(ApiTest, MissingOrBogusToken) {
  EXPECT_EQ(call("GET", "/classes").status, 401);
  EXPECT_EQ(call("GET", "/classes", "0123456789abcdef0123456789abcdef").status, 401);
}

TEST_F(ApiTest, MalformedBody) {
  const auto token = login("Head", "head-password");
  const auto before = w.store->commit_count();
  for (const char* body : {"{", "[1,2]", "", R"({"course_code":5})"}) {
    const auto res = call("POST", "/courses", token, body);
    EXPECT_EQ(res.status, 422) << body;
    EXPECT_EQ(code_of(res), "bad_body") << body;
  }
  EXPECT_EQ(w.store->commit_count(), before);
}

TEST_F(ApiTest, UnknownPathAndMethod) {
  const auto token = login("Head", "head-password");
  EXPECT_EQ(call("GET", "/nothing-here", token).status, 404);
  EXPECT_EQ(call("DELETE", "/courses", token).status, 405);
}

TEST_F(ApiTest, ErrorStatuses) {
  const auto head = login("Head", "head-password");
  const auto dup = call("POST", "/courses", head,
                        R"({"course_code":"CS101","title":"Again","units":3})");
  EXPECT_EQ(dup.status, 409);
  const auto missing = call("GET", "/classes/c999999/gradebook", head);
  EXPECT_EQ(missing.status, 404);
  const auto bad_units = call("POST", "/courses", head,
                              R"({"course_code":"CS9","title":"T","units":-1})");
  EXPECT_EQ(bad_units.status, 422);
}

TEST_F(ApiTest, RoleChecks) {
  const auto reyes = login("Reyes", "password-123");
  const auto santos = login("Santos", "password-123");
  const auto student = login("Student 0", "password-123");
  const std::string enroll = "/classes/" + w.class_id + "/enroll";
  const std::string body = Json{{"student_id", w.students[0]}}.dump();

  const auto before = w.store->commit_count();
  EXPECT_EQ(call("POST", enroll, santos, body).status, 403);
  EXPECT_EQ(call("POST", enroll, student, body).status, 403);
  EXPECT_EQ(call("PUT", "/settings", reyes, R"({"attainment_threshold":0.8})").status, 403);
  EXPECT_EQ(call("GET", "/analytics/rollup", student, {},
                 {{"curriculum", "2023"}, {"from", "2024-1"}, {"to", "2024-1"}})
                .status,
            403);
  EXPECT_EQ(call("GET", "/students/" + w.students[1] + "/attainment", student).status, 403);
  EXPECT_EQ(w.store->commit_count(), before);

  EXPECT_EQ(call("GET", "/students/" + w.students[0] + "/attainment", student).status, 200);
}

TEST_F(ApiTest, SettingsEditedByHeadOnly) {
  const auto head = login("Head", "head-password");
  const auto res = call("PUT", "/settings", head, R"({"attainment_threshold":0.8})");
  ASSERT_EQ(res.status, 200) << res.body;
  EXPECT_EQ(w.snap()->settings.attainment_threshold, 0.8);
  const auto bad = call("PUT", "/settings", head, R"({"attainment_threshold":2})");
  EXPECT_EQ(bad.status, 422);
  EXPECT_EQ(w.snap()->settings.attainment_threshold, 0.8);
}

TEST_F(ApiTest, NoCredentialInAnyResponse) {
  const auto head = login("Head", "head-password");
  const auto created = call("POST", "/users", head,
                            R"({"name":"New","role":"Student","password":"secret-pass-1"})");
  EXPECT_EQ(created.status, 201) << created.body;
  for (const auto& res : {created, call("GET", "/users", head), call("GET", "/classes", head),
                          call("GET", "/settings", head)}) {
    EXPECT_EQ(res.body.find("pbkdf2"), std::string::npos) << res.body;
    EXPECT_EQ(res.body.find("credential"), std::string::npos) << res.body;
    EXPECT_EQ(res.body.find("secret-pass-1"), std::string::npos) << res.body;
  }
}

TEST(ListenAddress, Split) {
  EXPECT_EQ(split_listen_address("127.0.0.1:8080"), std::make_pair(std::string("127.0.0.1"), 8080));
  EXPECT_ERRC(split_listen_address("localhost"), Errc::ValidationError);
  EXPECT_ERRC(split_listen_address("host:99999"), Errc::ValidationError);
}

TEST(ApiMatrix, EveryRoleAndEndpoint) {
  const auto r = gradelens::testing::check_rbac_matrix();
  EXPECT_TRUE(r.ok()) << r.summary();
}

TEST(ApiMatrix, HttpMatchesLibrary) {
  const auto r = gradelens::testing::check_api_equivalence();
  EXPECT_TRUE(r.ok()) << r.summary();
}

}  // namespace
}  // namespace gradelens::api
