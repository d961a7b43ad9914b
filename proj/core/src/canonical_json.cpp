#include "gradelens/canonical_json.hpp"

#include "gradelens/error.hpp"

namespace gradelens {

std::string canonical_dump(const Json& doc) {
  // nlohmann::json stores objects in std::map, so keys are already sorted.
  return doc.dump(-1, ' ', false, Json::error_handler_t::strict);
}

Json parse_body(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(Errc::BadBody, std::string("malformed JSON body: ") + e.what());
  }
}

}  // namespace gradelens
