#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace gradelens {

using Json = nlohmann::json;

// Canonical serialization: object keys in lexicographic byte order, UTF-8,
// no insignificant whitespace, shortest round-trip numbers. Two equal
// documents always produce identical bytes.
std::string canonical_dump(const Json& doc);

// Parses a request body. Malformed text raises Errc::BadBody.
Json parse_body(const std::string& text);

}  // namespace gradelens
