#include "gradelens/credentials.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/rand.h>

#include <charconv>
#include <vector>

#include "gradelens/error.hpp"

namespace gradelens {

namespace {

constexpr std::string_view kScheme = "pbkdf2-sha256";
constexpr std::size_t kSaltBytes = 16;
constexpr std::size_t kHashBytes = 32;

std::string to_hex(const unsigned char* data, std::size_t n) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(n * 2, '0');
  for (std::size_t i = 0; i < n; ++i) {
    out[2 * i] = kDigits[data[i] >> 4];
    out[2 * i + 1] = kDigits[data[i] & 0xf];
  }
  return out;
}

bool from_hex(std::string_view hex, std::vector<unsigned char>& out) {
  if (hex.size() % 2 != 0) return false;
  out.resize(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    unsigned v = 0;
    auto res = std::from_chars(hex.data() + 2 * i, hex.data() + 2 * i + 2, v, 16);
    if (res.ec != std::errc() || res.ptr != hex.data() + 2 * i + 2) return false;
    out[i] = static_cast<unsigned char>(v);
  }
  return true;
}

std::vector<unsigned char> derive(const std::string& password,
                                  const std::vector<unsigned char>& salt,
                                  int iterations) {
  std::vector<unsigned char> out(kHashBytes);
  if (PKCS5_PBKDF2_HMAC(password.data(), static_cast<int>(password.size()),
                        salt.data(), static_cast<int>(salt.size()), iterations,
                        EVP_sha256(), static_cast<int>(out.size()),
                        out.data()) != 1) {
    fail(Errc::IoFailure, "PBKDF2 derivation failed");
  }
  return out;
}

}  // namespace

std::string random_hex(std::size_t bytes) {
  std::vector<unsigned char> buf(bytes);
  if (RAND_bytes(buf.data(), static_cast<int>(buf.size())) != 1) {
    fail(Errc::IoFailure, "CSPRNG unavailable");
  }
  return to_hex(buf.data(), buf.size());
}

std::string hash_password(const std::string& password, int iterations) {
  std::vector<unsigned char> salt;
  from_hex(random_hex(kSaltBytes), salt);
  const auto hash = derive(password, salt, iterations);
  return std::string(kScheme) + "$" + std::to_string(iterations) + "$" +
         to_hex(salt.data(), salt.size()) + "$" +
         to_hex(hash.data(), hash.size());
}

bool verify_password(const std::string& password, const std::string& credential) {
  std::string_view rest = credential;
  std::string_view parts[4];
  for (int i = 0; i < 4; ++i) {
    const auto sep = rest.find('$');
    if ((sep == std::string_view::npos) != (i == 3)) return false;
    parts[i] = rest.substr(0, sep);
    rest = sep == std::string_view::npos ? std::string_view{} : rest.substr(sep + 1);
  }
  if (parts[0] != kScheme) return false;
  int iterations = 0;
  auto res = std::from_chars(parts[1].data(), parts[1].data() + parts[1].size(),
                             iterations);
  if (res.ec != std::errc() || iterations <= 0) return false;
  std::vector<unsigned char> salt;
  std::vector<unsigned char> expected;
  if (!from_hex(parts[2], salt) || !from_hex(parts[3], expected) ||
      expected.size() != kHashBytes) {
    return false;
  }
  const auto actual = derive(password, salt, iterations);
  return CRYPTO_memcmp(actual.data(), expected.data(), kHashBytes) == 0;
}

}  // namespace gradelens
