#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ro3/container.hpp"
#include "ro3/error.hpp"
#include "ro3/image.hpp"

namespace ro3 {

/// 8-bit planes handed to and returned from a back-end codec.
struct BytePlanes {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::vector<std::uint8_t>> planes;

  [[nodiscard]] std::size_t channels() const noexcept { return planes.size(); }

  void validate() const {
    if (width == 0 || height == 0) throw ArgumentError("codec: empty planes");
    if (planes.empty() || planes.size() > 3) throw ArgumentError("codec: 1 to 3 planes expected");
    for (const auto& p : planes) {
      if (p.size() != width * height) throw ArgumentError("codec: plane size mismatch");
    }
  }

  friend bool operator==(const BytePlanes&, const BytePlanes&) = default;
};

/// Rounds and clamps every plane of `img` (full padded extent).
inline BytePlanes to_byte_planes(const ImageBuf& img) {
  BytePlanes out{img.width(), img.height(), {}};
  for (const auto& p : img.planes()) {
    std::vector<std::uint8_t> bytes(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) bytes[i] = to_byte(p.values()[i]);
    out.planes.push_back(std::move(bytes));
  }
  return out;
}

inline ImageBuf from_byte_planes(const BytePlanes& bp) {
  bp.validate();
  std::vector<Plane> planes;
  for (const auto& bytes : bp.planes) {
    std::vector<double> v(bytes.begin(), bytes.end());
    planes.emplace_back(bp.width, bp.height, std::move(v));
  }
  return ImageBuf(std::move(planes));
}

/// A still-image codec used as a black box behind the catalyst pipeline.
/// Implementations must be safe to call concurrently on distinct inputs.
class BackendCodec {
public:
  virtual ~BackendCodec() = default;

  [[nodiscard]] virtual CodecId id() const noexcept = 0;
  [[nodiscard]] virtual std::string_view name() const noexcept = 0;
  [[nodiscard]] virtual bool lossless() const noexcept = 0;

  /// `quality` is 1..100; its meaning is codec specific.
  [[nodiscard]] virtual std::vector<std::uint8_t> encode(const BytePlanes& planes,
                                                         int quality) const = 0;
  [[nodiscard]] virtual BytePlanes decode(std::span<const std::uint8_t> bytes) const = 0;
};

/// Raw planes: per channel a u32 LE width, u32 LE height and the row-major
/// bytes. Ignores quality.
class StoreCodec final : public BackendCodec {
public:
  static constexpr std::size_t kPrefixSize = 8;

  [[nodiscard]] CodecId id() const noexcept override { return CodecId::Store; }
  [[nodiscard]] std::string_view name() const noexcept override { return "store"; }
  [[nodiscard]] bool lossless() const noexcept override { return true; }

  [[nodiscard]] std::vector<std::uint8_t> encode(const BytePlanes& planes,
                                                 int /*quality*/) const override {
    planes.validate();
    std::vector<std::uint8_t> out;
    out.reserve(planes.channels() * (kPrefixSize + planes.width * planes.height));
    for (const auto& p : planes.planes) {
      le::put<std::uint32_t>(out, static_cast<std::uint32_t>(planes.width));
      le::put<std::uint32_t>(out, static_cast<std::uint32_t>(planes.height));
      out.insert(out.end(), p.begin(), p.end());
    }
    return out;
  }

  [[nodiscard]] BytePlanes decode(std::span<const std::uint8_t> bytes) const override {
    BytePlanes out;
    std::size_t pos = 0;
    while (pos < bytes.size()) {
      if (bytes.size() - pos < kPrefixSize) throw FormatError("store: truncated plane prefix");
      const std::size_t w = le::get<std::uint32_t>(bytes, pos);
      const std::size_t h = le::get<std::uint32_t>(bytes, pos + 4);
      pos += kPrefixSize;
      if (w == 0 || h == 0) throw FormatError("store: zero plane size");
      if (out.planes.empty()) {
        out.width = w;
        out.height = h;
      } else if (w != out.width || h != out.height) {
        throw FormatError("store: planes differ in size");
      }
      if (bytes.size() - pos < w * h) throw FormatError("store: truncated plane data");
      out.planes.emplace_back(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                              bytes.begin() + static_cast<std::ptrdiff_t>(pos + w * h));
      pos += w * h;
      if (out.planes.size() > 3) throw FormatError("store: more than 3 planes");
    }
    if (out.planes.empty()) throw FormatError("store: empty payload");
    return out;
  }
};

inline std::string_view codec_name(CodecId id) noexcept {
  switch (id) {
    case CodecId::Store: return "store";
    case CodecId::Jpeg: return "jpeg";
    case CodecId::Jpeg2000: return "jp2";
    case CodecId::Png: return "png";
  }
  return "unknown";
}

inline CodecId codec_id_from_name(std::string_view name) {
  if (name == "store") return CodecId::Store;
  if (name == "jpeg" || name == "jpg") return CodecId::Jpeg;
  if (name == "jp2" || name == "jpeg2000") return CodecId::Jpeg2000;
  if (name == "png") return CodecId::Png;
  throw ArgumentError("unknown codec: " + std::string(name));
}

class CodecRegistry {
public:
  void add(std::shared_ptr<const BackendCodec> codec) {
    const auto id = codec->id();
    codecs_[id] = std::move(codec);
  }

  [[nodiscard]] bool contains(CodecId id) const { return codecs_.count(id) != 0; }

  [[nodiscard]] const BackendCodec& get(CodecId id) const {
    const auto it = codecs_.find(id);
    if (it == codecs_.end()) {
      throw FormatError("codec '" + std::string(codec_name(id)) + "' is not available");
    }
    return *it->second;
  }

  [[nodiscard]] std::vector<CodecId> ids() const {
    std::vector<CodecId> out;
    for (const auto& [id, _] : codecs_) out.push_back(id);
    return out;
  }

private:
  std::map<CodecId, std::shared_ptr<const BackendCodec>> codecs_;
};

}  // namespace ro3
