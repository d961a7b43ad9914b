#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gradelens::api {

struct HttpRequest {
  std::string method;
  std::string path;  // without query string
  std::map<std::string, std::string> query;
  std::map<std::string, std::string> headers;  // lower-case names
  std::string body;

  std::optional<std::string> query_param(const std::string& name) const;
  std::optional<std::string> header(const std::string& name) const;
};

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

using PathParams = std::map<std::string, std::string>;

// Matches "/classes/{id}/enroll"-style patterns segment by segment.
std::optional<PathParams> match_path(std::string_view pattern,
                                     std::string_view path);

}  // namespace gradelens::api
