#pragma once

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "ro3/codec.hpp"
#include "ro3/error.hpp"
#include "ro3/image.hpp"
#include "ro3/pnm.hpp"

#if defined(RO3_HAVE_LIBJPEG)
#include "ro3/codec_jpeg.hpp"
#endif
#if defined(RO3_HAVE_LIBPNG)
#include "ro3/codec_png.hpp"
#endif

namespace ro3 {

inline std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("cannot read " + path.string());
  return bytes;
}

inline void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("cannot write " + path.string());
}

/// Decodes PGM/PPM, and PNG/JPEG when available, sniffing the format from
/// the leading bytes.
inline ImageBuf decode_image(std::span<const std::uint8_t> bytes) {
  if (pnm::is_pnm(bytes)) return pnm::decode(bytes);
#if defined(RO3_HAVE_LIBPNG)
  if (is_png(bytes)) return from_byte_planes(PngCodec{}.decode(bytes));
#endif
#if defined(RO3_HAVE_LIBJPEG)
  if (is_jpeg(bytes)) return from_byte_planes(JpegCodec{}.decode(bytes));
#endif
  throw FormatError("unsupported image format");
}

inline ImageBuf load_image(const std::filesystem::path& path) {
  return decode_image(read_file(path));
}

/// Writes the original-size region, quantized to 8 bits. The format follows
/// the extension: .png and .jpg/.jpeg when available, PGM/PPM otherwise.
inline void save_image(const ImageBuf& img, const std::filesystem::path& path, int quality = 95) {
  auto ext = path.extension().string();
  for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  const auto cropped = crop_to_original(img);
#if defined(RO3_HAVE_LIBPNG)
  if (ext == ".png") return write_file(path, PngCodec{}.encode(to_byte_planes(cropped), quality));
#endif
#if defined(RO3_HAVE_LIBJPEG)
  if (ext == ".jpg" || ext == ".jpeg") {
    return write_file(path, JpegCodec{}.encode(to_byte_planes(cropped), quality));
  }
#endif
  if (ext == ".png" || ext == ".jpg" || ext == ".jpeg") {
    throw ArgumentError("image format " + ext + " is not available in this build");
  }
  write_file(path, pnm::encode(cropped));
}

}  // namespace ro3
