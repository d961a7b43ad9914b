#pragma once

#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "gradelens/model.hpp"
#include "gradelens/store.hpp"

namespace gradelens {

struct Session {
  std::string user_id;
  Role role = Role::Student;
  Timestamp expires_at = 0;
};

struct IssuedToken {
  std::string token;  // 128 random bits, hex
  Timestamp expires_at = 0;
  std::string user_id;
  Role role = Role::Student;
};

// In-memory bearer-token table. Thread-safe.
class SessionManager {
 public:
  explicit SessionManager(Clock clock = system_now) : clock_(std::move(clock)) {}

  IssuedToken issue(const UserAccount& user, int ttl_minutes);
  // nullopt for unknown or expired tokens; expired entries are dropped.
  std::optional<Session> resolve(const std::string& token);
  void revoke(const std::string& token);
  std::size_t size() const;

 private:
  Clock clock_;
  mutable std::mutex mutex_;
  std::unordered_map<std::string, Session> sessions_;
};

}  // namespace gradelens
