#include "gradelens/sessions.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace gradelens {
namespace {

using testing::TestClock;

UserAccount user(Role role) { return {"u000007", "Someone", role, "", true, ""}; }

TEST(Sessions, IssuedTokenResolves) {
  TestClock clock;
  SessionManager sessions(clock.fn());
  const auto t = sessions.issue(user(Role::Instructor), 60);
  EXPECT_EQ(t.token.size(), 32u);
  const auto s = sessions.resolve(t.token);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->user_id, "u000007");
  EXPECT_EQ(s->role, Role::Instructor);
}

TEST(Sessions, ExpiresAtTtl) {
  TestClock clock;
  SessionManager sessions(clock.fn());
  const auto t = sessions.issue(user(Role::Student), 30);
  clock.advance_minutes(29);
  EXPECT_TRUE(sessions.resolve(t.token).has_value());
  clock.advance_minutes(1);
  EXPECT_FALSE(sessions.resolve(t.token).has_value());
  EXPECT_EQ(sessions.size(), 0u);
}

TEST(Sessions, UnknownAndRevokedTokensFail) {
  SessionManager sessions;
  EXPECT_FALSE(sessions.resolve("deadbeef").has_value());
  const auto t = sessions.issue(user(Role::Student), 30);
  sessions.revoke(t.token);
  EXPECT_FALSE(sessions.resolve(t.token).has_value());
}

}  // namespace
}  // namespace gradelens
