#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "disguise/mlp.hpp"

namespace disguise {

// Keyfile layout, little-endian throughout:
//   magic "IDG1" | u16 version | u32 in_dim | u32 hidden_dim | u32 out_dim |
//   u8 hidden_act | u8 out_act | f64 payload (w1, b1, w2, b2, row-major) |
//   u32 CRC-32 over everything before it
inline constexpr std::array<std::uint8_t, 4> kKeyMagic{'I', 'D', 'G', '1'};
inline constexpr std::uint16_t kKeyVersion = 1;
inline constexpr std::size_t kKeyHeaderSize = 20;

std::vector<std::uint8_t> save_key(const MlpParams& params);

/// Inverse of save_key. Throws KeyFormatError on a bad magic or field,
/// KeyVersionError on an unknown version, KeyCorruptError on truncation or
/// checksum mismatch.
MlpParams load_key(std::span<const std::uint8_t> bytes);

MlpParams load_key_file(const std::string& path);
void save_key_file(const MlpParams& params, const std::string& path);

/// CRC-32, IEEE polynomial (reflected 0xEDB88320).
std::uint32_t crc32_ieee(std::span<const std::uint8_t> bytes);

}  // namespace disguise
