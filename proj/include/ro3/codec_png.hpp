#pragma once

// Lossless PNG back-end using libpng's simplified API. Link against libpng
// when including this header.

#include <png.h>

#include <string>

#include "ro3/codec.hpp"

namespace ro3 {

class PngCodec final : public BackendCodec {
public:
  [[nodiscard]] CodecId id() const noexcept override { return CodecId::Png; }
  [[nodiscard]] std::string_view name() const noexcept override { return "png"; }
  [[nodiscard]] bool lossless() const noexcept override { return true; }

  [[nodiscard]] std::vector<std::uint8_t> encode(const BytePlanes& planes,
                                                 int /*quality*/) const override {
    planes.validate();
    if (planes.channels() == 2) throw ArgumentError("png: two-channel images are not supported");
    const std::size_t ch = planes.channels();
    std::vector<std::uint8_t> interleaved(planes.width * planes.height * ch);
    for (std::size_t i = 0; i < planes.width * planes.height; ++i) {
      for (std::size_t c = 0; c < ch; ++c) interleaved[i * ch + c] = planes.planes[c][i];
    }

    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(planes.width);
    image.height = static_cast<png_uint_32>(planes.height);
    image.format = ch == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;

    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&image, nullptr, &size, 0, interleaved.data(), 0, nullptr)) {
      throw FormatError(std::string("png encode: ") + image.message);
    }
    std::vector<std::uint8_t> out(size);
    if (!png_image_write_to_memory(&image, out.data(), &size, 0, interleaved.data(), 0, nullptr)) {
      throw FormatError(std::string("png encode: ") + image.message);
    }
    out.resize(size);
    return out;
  }

  [[nodiscard]] BytePlanes decode(std::span<const std::uint8_t> bytes) const override {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
      throw FormatError(std::string("png decode: ") + image.message);
    }
    const bool gray = (image.format & PNG_FORMAT_FLAG_COLOR) == 0;
    image.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
    const std::size_t ch = gray ? 1 : 3;
    std::vector<std::uint8_t> interleaved(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, interleaved.data(), 0, nullptr)) {
      png_image_free(&image);
      throw FormatError(std::string("png decode: ") + image.message);
    }
    BytePlanes out{image.width, image.height, {}};
    out.planes.assign(ch, std::vector<std::uint8_t>(out.width * out.height));
    for (std::size_t i = 0; i < out.width * out.height; ++i) {
      for (std::size_t c = 0; c < ch; ++c) out.planes[c][i] = interleaved[i * ch + c];
    }
    return out;
  }
};

inline bool is_png(std::span<const std::uint8_t> bytes) noexcept {
  static constexpr std::uint8_t sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
  return bytes.size() >= 8 && std::equal(sig, sig + 8, bytes.begin());
}

}  // namespace ro3
