#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gradelens/access.hpp"
#include "gradelens/api/router.hpp"
#include "gradelens/sessions.hpp"
#include "gradelens/store.hpp"

namespace gradelens::api {

inline constexpr std::string_view kApiPrefix = "/api/v1";

struct Endpoint {
  std::string method;
  std::string pattern;            // relative to kApiPrefix
  std::optional<Action> action;   // nullopt: no authentication required
};

// The HTTP/JSON surface. Transport-agnostic: HttpServer feeds it requests,
// tests may call handle() directly. Every mutating request is one store
// commit; every read uses one snapshot.
//
// Errors are {"error":{"code":<machine code>,"message":...,"details":[...]}}
// with the status from http_status().
class ApiService {
 public:
  ApiService(Store& store, SessionManager& sessions);

  HttpResponse handle(const HttpRequest& request) const;

  static const std::vector<Endpoint>& endpoints();

  // Defined in service.cpp.
  struct Context;
  struct Route;

 private:
  static const std::vector<Route>& routes();

  Store& store_;
  SessionManager& sessions_;
};

}  // namespace gradelens::api
