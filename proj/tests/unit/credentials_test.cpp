#include "gradelens/credentials.hpp"

#include <gtest/gtest.h>

#include <openssl/evp.h>

#include <iomanip>
#include <sstream>

namespace gradelens {
namespace {

TEST(Credentials, HashVerifiesOnlyTheSamePassword) {
  const auto cred = hash_password("s3cret-pw", 1000);
  EXPECT_TRUE(verify_password("s3cret-pw", cred));
  EXPECT_FALSE(verify_password("s3cret-pW", cred));
  EXPECT_FALSE(verify_password("", cred));
}

TEST(Credentials, SaltsDiffer) {
  EXPECT_NE(hash_password("same-password", 1000),
            hash_password("same-password", 1000));
}

TEST(Credentials, MalformedOrEmptyNeverVerifies) {
  EXPECT_FALSE(verify_password("x", ""));
  EXPECT_FALSE(verify_password("x", "pbkdf2-sha256$abc$00$00"));
  EXPECT_FALSE(verify_password("x", "md5$1$00$00"));
}

// Recomputes the stored hash with a direct PBKDF2 call.
TEST(Credentials, EncodingMatchesDirectPbkdf2) {
  const auto cred = hash_password("s3cret-pw", 1234);
  std::vector<std::string> parts;
  std::stringstream in(cred);
  for (std::string p; std::getline(in, p, '$');) parts.push_back(p);
  ASSERT_EQ(parts.size(), 4u);
  EXPECT_EQ(parts[0], "pbkdf2-sha256");
  EXPECT_EQ(parts[1], "1234");

  std::vector<unsigned char> salt;
  for (std::size_t i = 0; i < parts[2].size(); i += 2) {
    salt.push_back(static_cast<unsigned char>(std::stoi(parts[2].substr(i, 2), nullptr, 16)));
  }
  std::vector<unsigned char> out(parts[3].size() / 2);
  const std::string pw = "s3cret-pw";
  ASSERT_EQ(PKCS5_PBKDF2_HMAC(pw.data(), static_cast<int>(pw.size()), salt.data(),
                              static_cast<int>(salt.size()), 1234, EVP_sha256(),
                              static_cast<int>(out.size()), out.data()),
            1);
  std::ostringstream hex;
  for (unsigned char b : out) hex << std::hex << std::setw(2) << std::setfill('0') << int(b);
  EXPECT_EQ(hex.str(), parts[3]);
}

TEST(Credentials, RandomHexLength) {
  EXPECT_EQ(random_hex(16).size(), 32u);
  EXPECT_NE(random_hex(16), random_hex(16));
}

}  // namespace
}  // namespace gradelens
