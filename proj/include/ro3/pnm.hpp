#pragma once

#include <cctype>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ro3/error.hpp"
#include "ro3/image.hpp"

// Binary PGM (P5) and PPM (P6), 8-bit only.
namespace ro3::pnm {

namespace detail {

class Cursor {
public:
  explicit Cursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto ch = bytes_[pos_];
      if (ch == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(ch)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::size_t read_uint() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw FormatError("pnm: expected an unsigned integer in header");
    }
    std::size_t v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + static_cast<std::size_t>(bytes_[pos_] - '0');
      if (v > (1u << 30)) throw FormatError("pnm: header value out of range");
      ++pos_;
    }
    return v;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void expect_single_space() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw FormatError("pnm: missing whitespace before raster");
    }
    ++pos_;
  }

  std::size_t pos() const noexcept { return pos_; }
  void advance(std::size_t n) noexcept { pos_ += n; }

private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline bool is_pnm(std::span<const std::uint8_t> bytes) noexcept {
  return bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6');
}

inline ImageBuf decode(std::span<const std::uint8_t> bytes) {
  if (!is_pnm(bytes)) throw FormatError("pnm: unsupported magic (only P5/P6)");
  const std::size_t channels = bytes[1] == '5' ? 1 : 3;
  detail::Cursor cur(bytes);
  cur.advance(2);
  const auto width = cur.read_uint();
  const auto height = cur.read_uint();
  const auto maxval = cur.read_uint();
  cur.expect_single_space();
  if (width == 0 || height == 0) throw FormatError("pnm: zero-sized image");
  if (maxval == 0 || maxval > 255) throw FormatError("pnm: only 8-bit samples are supported");
  const std::size_t need = width * height * channels;
  if (bytes.size() - cur.pos() < need) throw FormatError("pnm: truncated raster");

  std::vector<Plane> planes(channels, Plane(width, height));
  const auto* src = bytes.data() + cur.pos();
  for (std::size_t i = 0; i < width * height; ++i) {
    for (std::size_t c = 0; c < channels; ++c) {
      planes[c].values()[i] = static_cast<double>(src[i * channels + c]);
    }
  }
  return ImageBuf(std::move(planes));
}

/// Encodes the original-size region of `img`; samples are rounded and clamped.
inline std::vector<std::uint8_t> encode(const ImageBuf& img) {
  if (img.channels() == 2) throw ArgumentError("pnm: two-channel images cannot be written");
  const std::size_t w = img.orig_width();
  const std::size_t h = img.orig_height();
  const std::size_t channels = img.channels();
  const std::string header = std::string(channels == 1 ? "P5" : "P6") + "\n" +
                             std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(header.size() + w * h * channels);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      for (std::size_t ch = 0; ch < channels; ++ch) out.push_back(to_byte(img.plane(ch)(r, c)));
    }
  }
  return out;
}

}  // namespace ro3::pnm
