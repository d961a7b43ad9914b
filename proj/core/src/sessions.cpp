#include "gradelens/sessions.hpp"

#include "gradelens/credentials.hpp"

namespace gradelens {

IssuedToken SessionManager::issue(const UserAccount& user, int ttl_minutes) {
  IssuedToken out{random_hex(16),
                  clock_() + static_cast<Timestamp>(ttl_minutes) * 60'000,
                  user.user_id, user.role};
  std::lock_guard lock(mutex_);
  sessions_[out.token] = Session{out.user_id, out.role, out.expires_at};
  return out;
}

std::optional<Session> SessionManager::resolve(const std::string& token) {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(token);
  if (it == sessions_.end()) return std::nullopt;
  if (clock_() >= it->second.expires_at) {
    sessions_.erase(it);
    return std::nullopt;
  }
  return it->second;
}

void SessionManager::revoke(const std::string& token) {
  std::lock_guard lock(mutex_);
  sessions_.erase(token);
}

std::size_t SessionManager::size() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

}  // namespace gradelens
