#include "oraclesim/protocol/digest.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace oraclesim {

Digest commitment_digest(Position position, const Nonce& nonce) {
  std::array<std::uint8_t, 1 + 32> preimage{};
  preimage[0] = position_byte(position);
  std::copy(nonce.begin(), nonce.end(), preimage.begin() + 1);

  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(preimage.data(), preimage.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size()) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0x0f]);
  }
  return s;
}

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::array<std::uint8_t, 32> bytes32_from_hex(std::string_view hex) {
  std::array<std::uint8_t, 32> out{};
  if (hex.size() != out.size() * 2) throw std::invalid_argument("expected 64 hex characters");
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("invalid hex character");
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

}  // namespace oraclesim
