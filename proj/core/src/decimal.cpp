#include "gradelens/decimal.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string>

namespace gradelens {

namespace {

// Adds one unit in the last place of a string of ASCII digits, growing it on
// overflow ("99" -> "100").
void increment_digits(std::string& digits) {
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (*it == '9') {
      *it = '0';
    } else {
      ++*it;
      return;
    }
  }
  digits.insert(digits.begin(), '1');
}

}  // namespace

double round_half_up(double value, int places) {
  if (!std::isfinite(value) || places < 0) return value;

  std::array<char, 512> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(),
                                 std::fabs(value), std::chars_format::fixed);
  std::string text(buf.data(), res.ptr);

  const auto dot = text.find('.');
  std::string integral = dot == std::string::npos ? text : text.substr(0, dot);
  std::string fraction = dot == std::string::npos ? "" : text.substr(dot + 1);

  if (static_cast<int>(fraction.size()) > places) {
    const bool round_up = fraction[static_cast<std::size_t>(places)] >= '5';
    fraction.resize(static_cast<std::size_t>(places));
    if (round_up) {
      std::string digits = integral + fraction;
      increment_digits(digits);
      integral = digits.substr(0, digits.size() - fraction.size());
      fraction = digits.substr(digits.size() - fraction.size());
    }
  }

  std::string rebuilt = integral;
  if (!fraction.empty()) rebuilt += "." + fraction;
  double out = 0.0;
  std::from_chars(rebuilt.data(), rebuilt.data() + rebuilt.size(), out);
  return std::signbit(value) ? -out : out;
}

std::string format_fixed(double value, int places) {
  const double rounded = round_half_up(value, places);
  std::array<char, 512> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), rounded,
                                 std::chars_format::fixed, places);
  std::string out(buf.data(), res.ptr);
  if (out.starts_with("-") &&
      out.find_first_not_of("-0.") == std::string::npos) {
    out.erase(0, 1);
  }
  return out;
}

}  // namespace gradelens
