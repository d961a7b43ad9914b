#pragma once

#include <string>

namespace gradelens {

inline constexpr int kDefaultPbkdf2Iterations = 100'000;
inline constexpr std::size_t kMinPasswordLength = 8;

// PBKDF2-HMAC-SHA256 with a random 16-byte salt, encoded as
// "pbkdf2-sha256$<iterations>$<salt hex>$<hash hex>".
std::string hash_password(const std::string& password,
                          int iterations = kDefaultPbkdf2Iterations);

// Constant-time comparison. False for an empty or malformed credential.
bool verify_password(const std::string& password, const std::string& credential);

// `bytes` bytes from the OS CSPRNG, hex encoded.
std::string random_hex(std::size_t bytes);

}  // namespace gradelens
