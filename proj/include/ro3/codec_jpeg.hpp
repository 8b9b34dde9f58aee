#pragma once

// Baseline JPEG back-end on top of libjpeg. Link against libjpeg when
// including this header.

#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>

extern "C" {
#include <jpeglib.h>
}

#include "ro3/codec.hpp"

namespace ro3 {

namespace detail::jpeg {

struct ErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

extern "C" inline void on_error(j_common_ptr info) {
  auto* err = reinterpret_cast<ErrorManager*>(info->err);
  (*info->err->format_message)(info, err->message);
  std::longjmp(err->jump, 1);
}

extern "C" inline void on_message(j_common_ptr) {}

// Heap state so nothing on the stack changes between setjmp and longjmp.
struct EncodeState {
  jpeg_compress_struct info{};
  ErrorManager err{};
  unsigned char* buffer = nullptr;
  unsigned long size = 0;
  std::vector<std::uint8_t> interleaved;
};

struct DecodeState {
  jpeg_decompress_struct info{};
  ErrorManager err{};
  BytePlanes out;
  std::vector<std::uint8_t> row;
};

}  // namespace detail::jpeg

class JpegCodec final : public BackendCodec {
public:
  [[nodiscard]] CodecId id() const noexcept override { return CodecId::Jpeg; }
  [[nodiscard]] std::string_view name() const noexcept override { return "jpeg"; }
  [[nodiscard]] bool lossless() const noexcept override { return false; }

  [[nodiscard]] std::vector<std::uint8_t> encode(const BytePlanes& planes,
                                                 int quality) const override {
    planes.validate();
    if (quality < 1 || quality > 100) throw ArgumentError("jpeg: quality must be in 1..100");
    if (planes.channels() == 2) throw ArgumentError("jpeg: two-channel images are not supported");
    const std::size_t ch = planes.channels();

    auto st = std::make_unique<detail::jpeg::EncodeState>();
    st->interleaved.resize(planes.width * planes.height * ch);
    for (std::size_t i = 0; i < planes.width * planes.height; ++i) {
      for (std::size_t c = 0; c < ch; ++c) st->interleaved[i * ch + c] = planes.planes[c][i];
    }

    st->info.err = jpeg_std_error(&st->err.base);
    st->err.base.error_exit = detail::jpeg::on_error;
    st->err.base.output_message = detail::jpeg::on_message;
    if (setjmp(st->err.jump)) {
      jpeg_destroy_compress(&st->info);
      std::free(st->buffer);
      throw FormatError(std::string("jpeg encode: ") + st->err.message);
    }
    jpeg_create_compress(&st->info);
    jpeg_mem_dest(&st->info, &st->buffer, &st->size);
    st->info.image_width = static_cast<JDIMENSION>(planes.width);
    st->info.image_height = static_cast<JDIMENSION>(planes.height);
    st->info.input_components = static_cast<int>(ch);
    st->info.in_color_space = ch == 1 ? JCS_GRAYSCALE : JCS_RGB;
    jpeg_set_defaults(&st->info);
    jpeg_set_quality(&st->info, quality, TRUE);
    jpeg_start_compress(&st->info, TRUE);
    while (st->info.next_scanline < st->info.image_height) {
      JSAMPROW row = st->interleaved.data() + std::size_t{st->info.next_scanline} * planes.width * ch;
      jpeg_write_scanlines(&st->info, &row, 1);
    }
    jpeg_finish_compress(&st->info);
    std::vector<std::uint8_t> out(st->buffer, st->buffer + st->size);
    jpeg_destroy_compress(&st->info);
    std::free(st->buffer);
    return out;
  }

  [[nodiscard]] BytePlanes decode(std::span<const std::uint8_t> bytes) const override {
    if (bytes.empty()) throw FormatError("jpeg: empty bitstream");
    auto st = std::make_unique<detail::jpeg::DecodeState>();
    st->info.err = jpeg_std_error(&st->err.base);
    st->err.base.error_exit = detail::jpeg::on_error;
    st->err.base.output_message = detail::jpeg::on_message;
    if (setjmp(st->err.jump)) {
      jpeg_destroy_decompress(&st->info);
      throw FormatError(std::string("jpeg decode: ") + st->err.message);
    }
    jpeg_create_decompress(&st->info);
    jpeg_mem_src(&st->info, bytes.data(), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&st->info, TRUE);
    const bool gray = st->info.num_components == 1;
    st->info.out_color_space = gray ? JCS_GRAYSCALE : JCS_RGB;
    jpeg_start_decompress(&st->info);
    const std::size_t w = st->info.output_width;
    const std::size_t h = st->info.output_height;
    const std::size_t ch = static_cast<std::size_t>(st->info.output_components);
    st->out.width = w;
    st->out.height = h;
    st->out.planes.assign(ch, std::vector<std::uint8_t>(w * h));
    st->row.resize(w * ch);
    while (st->info.output_scanline < st->info.output_height) {
      const std::size_t r = st->info.output_scanline;
      JSAMPROW row = st->row.data();
      jpeg_read_scanlines(&st->info, &row, 1);
      for (std::size_t c = 0; c < w; ++c) {
        for (std::size_t k = 0; k < ch; ++k) st->out.planes[k][r * w + c] = st->row[c * ch + k];
      }
    }
    jpeg_finish_decompress(&st->info);
    jpeg_destroy_decompress(&st->info);
    return std::move(st->out);
  }
};

inline bool is_jpeg(std::span<const std::uint8_t> bytes) noexcept {
  return bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF;
}

}  // namespace ro3
