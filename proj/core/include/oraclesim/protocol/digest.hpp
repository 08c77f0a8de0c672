#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "oraclesim/protocol/types.hpp"

namespace oraclesim {

using Digest = std::array<std::uint8_t, 32>;
using Nonce = std::array<std::uint8_t, 32>;

/// 0x00 = False, 0x01 = True, 0x02 = Unknown.
constexpr std::uint8_t position_byte(Position p) noexcept { return static_cast<std::uint8_t>(p); }

/// SHA-256(position byte || 32-byte nonce).
Digest commitment_digest(Position position, const Nonce& nonce);

/// Lower-case hex, two characters per byte.
std::string to_hex(std::span<const std::uint8_t> bytes);

/// Parses exactly 64 hex characters; throws std::invalid_argument otherwise.
std::array<std::uint8_t, 32> bytes32_from_hex(std::string_view hex);

}  // namespace oraclesim
