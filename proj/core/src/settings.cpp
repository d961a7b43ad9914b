#include "gradelens/settings.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "gradelens/error.hpp"
#include "gradelens/json_io.hpp"

namespace gradelens {

void validate_threshold(double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) {
    fail(Errc::ValidationError, "attainment threshold must lie in (0, 1]");
  }
}

void Settings::validate() const {
  validate_threshold(attainment_threshold);
  band_scheme.validate();
  if (band_scheme.lo != 0.0 || band_scheme.hi != 1.0) {
    fail(Errc::InvalidScale, "attainment band scheme must cover [0, 1]");
  }
  likert_scheme.validate();
  grade_scale.validate();
  if (token_ttl_minutes <= 0) {
    fail(Errc::ValidationError, "token_ttl_minutes must be positive");
  }
  if (listen_address.find(':') == std::string::npos) {
    fail(Errc::ValidationError, "listen_address must be host:port");
  }
  if (data_dir.empty()) fail(Errc::ValidationError, "data_dir is empty");
}

Json settings_to_json(const Settings& s) {
  return Json{{"attainment_threshold", s.attainment_threshold},
              {"band_scheme", s.band_scheme},
              {"likert_scheme", s.likert_scheme},
              {"grade_scale", s.grade_scale},
              {"token_ttl_minutes", s.token_ttl_minutes},
              {"listen_address", s.listen_address},
              {"data_dir", s.data_dir}};
}

Settings settings_from_json(const Json& doc) {
  if (!doc.is_object()) fail(Errc::BadBody, "settings must be a JSON object");
  Settings s;
  try {
    if (doc.contains("attainment_threshold"))
      doc.at("attainment_threshold").get_to(s.attainment_threshold);
    if (doc.contains("band_scheme")) doc.at("band_scheme").get_to(s.band_scheme);
    if (doc.contains("likert_scheme"))
      doc.at("likert_scheme").get_to(s.likert_scheme);
    if (doc.contains("grade_scale")) doc.at("grade_scale").get_to(s.grade_scale);
    if (doc.contains("token_ttl_minutes"))
      doc.at("token_ttl_minutes").get_to(s.token_ttl_minutes);
    if (doc.contains("listen_address"))
      doc.at("listen_address").get_to(s.listen_address);
    if (doc.contains("data_dir")) doc.at("data_dir").get_to(s.data_dir);
  } catch (const Json::exception& e) {
    fail(Errc::BadBody, std::string("malformed settings: ") + e.what());
  }
  s.validate();
  return s;
}

Settings load_settings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoFailure, "cannot read settings file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return settings_from_json(parse_body(buf.str()));
}

}  // namespace gradelens
