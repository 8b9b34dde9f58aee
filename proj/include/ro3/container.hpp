#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <vector>

#include "ro3/error.hpp"

// Self-describing compressed file: a 32-byte little-endian header followed
// by the back-end codec's bitstream of the half-scale approximation planes.
//
//   offset size field
//   0      4    magic "RO3C"
//   4      1    version (1)
//   5      1    flags (bit0: deblurring recommended)
//   6      1    codec id (0 store, 1 jpeg, 2 jpeg2000, 3 png)
//   7      1    basis id (0 haar, 1 db4)
//   8      1    channels (1 or 3)
//   9      3    reserved, zero
//   12     4    original width, u32
//   16     4    original height, u32
//   20     4    anchoring parameter, IEEE-754 binary32
//   24     8    payload length, u64
//   32     ...  payload
namespace ro3 {

enum class CodecId : std::uint8_t { Store = 0, Jpeg = 1, Jpeg2000 = 2, Png = 3 };

inline constexpr std::array<std::uint8_t, 4> kContainerMagic{'R', 'O', '3', 'C'};
inline constexpr std::uint8_t kContainerVersion = 1;
inline constexpr std::size_t kContainerHeaderSize = 32;
inline constexpr std::uint8_t kFlagDeblur = 0x01;

struct Ro3Container {
  std::uint8_t version = kContainerVersion;
  std::uint8_t flags = 0;
  CodecId codec = CodecId::Store;
  std::uint8_t basis_id = 0;
  std::uint8_t channels = 1;
  std::uint32_t orig_width = 0;
  std::uint32_t orig_height = 0;
  float ap = 1e-4f;
  std::vector<std::uint8_t> payload;

  [[nodiscard]] bool deblur_recommended() const noexcept { return (flags & kFlagDeblur) != 0; }
  [[nodiscard]] std::size_t file_size() const noexcept {
    return kContainerHeaderSize + payload.size();
  }

  friend bool operator==(const Ro3Container&, const Ro3Container&) = default;
};

namespace le {

template <typename U>
void put(std::vector<std::uint8_t>& out, U v) {
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

template <typename U>
U get(std::span<const std::uint8_t> in, std::size_t offset) {
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(in[offset + i]) << (8 * i);
  return v;
}

}  // namespace le

inline bool is_container(std::span<const std::uint8_t> bytes) noexcept {
  return bytes.size() >= 4 && std::memcmp(bytes.data(), kContainerMagic.data(), 4) == 0;
}

inline void validate_header_fields(const Ro3Container& c) {
  if (c.version != kContainerVersion) throw FormatError("container: unsupported version");
  if (c.channels != 1 && c.channels != 3) throw FormatError("container: channels must be 1 or 3");
  if (c.orig_width == 0 || c.orig_height == 0) throw FormatError("container: zero dimensions");
  if (c.basis_id > 1) throw FormatError("container: unknown wavelet basis id");
  if (static_cast<std::uint8_t>(c.codec) > 3) throw FormatError("container: unknown codec id");
  if (!(c.ap > 0.0f)) throw FormatError("container: anchoring parameter must be positive");
}

inline std::vector<std::uint8_t> serialize(const Ro3Container& c) {
  validate_header_fields(c);
  std::vector<std::uint8_t> out;
  out.reserve(c.file_size());
  for (const auto b : kContainerMagic) out.push_back(b);
  out.push_back(c.version);
  out.push_back(c.flags);
  out.push_back(static_cast<std::uint8_t>(c.codec));
  out.push_back(c.basis_id);
  out.push_back(c.channels);
  for (int i = 0; i < 3; ++i) out.push_back(0);
  le::put<std::uint32_t>(out, c.orig_width);
  le::put<std::uint32_t>(out, c.orig_height);
  le::put<std::uint32_t>(out, std::bit_cast<std::uint32_t>(c.ap));
  le::put<std::uint64_t>(out, c.payload.size());
  out.insert(out.end(), c.payload.begin(), c.payload.end());
  return out;
}

/// Parses and validates a container. Unknown codec ids are reported here;
/// whether a known codec is available is the registry's concern.
inline Ro3Container parse(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kContainerHeaderSize) throw FormatError("container: truncated header");
  if (!is_container(bytes)) throw FormatError("container: bad magic");
  Ro3Container c;
  c.version = bytes[4];
  c.flags = bytes[5];
  c.codec = static_cast<CodecId>(bytes[6]);
  c.basis_id = bytes[7];
  c.channels = bytes[8];
  if (bytes[9] != 0 || bytes[10] != 0 || bytes[11] != 0) {
    throw FormatError("container: reserved bytes must be zero");
  }
  c.orig_width = le::get<std::uint32_t>(bytes, 12);
  c.orig_height = le::get<std::uint32_t>(bytes, 16);
  c.ap = std::bit_cast<float>(le::get<std::uint32_t>(bytes, 20));
  const auto payload_len = le::get<std::uint64_t>(bytes, 24);
  validate_header_fields(c);
  if (payload_len != bytes.size() - kContainerHeaderSize) {
    throw FormatError("container: payload length does not match file size");
  }
  c.payload.assign(bytes.begin() + kContainerHeaderSize, bytes.end());
  return c;
}

}  // namespace ro3
