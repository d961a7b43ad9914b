#pragma once

#include <string>

#include "gradelens/bands.hpp"
#include "gradelens/canonical_json.hpp"

namespace gradelens {

struct Settings {
  double attainment_threshold = 0.70;
  BandScheme band_scheme = default_attainment_scheme();
  BandScheme likert_scheme = likert5_scheme();
  GradeScale grade_scale = default_grade_scale();
  int token_ttl_minutes = 480;
  std::string listen_address = "127.0.0.1:8080";
  std::string data_dir = "./data";

  // Errc::ValidationError / Errc::InvalidScale on bad values.
  void validate() const;
  bool operator==(const Settings&) const = default;
};

// Keys absent from the document keep their defaults; the result is validated.
Settings settings_from_json(const Json& doc);
Json settings_to_json(const Settings& settings);

Settings load_settings_file(const std::string& path);  // Errc::IoFailure
void validate_threshold(double theta);                  // θ in (0, 1]

}  // namespace gradelens
