#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ro3/error.hpp"

namespace ro3 {

/// One image channel as a row-major real matrix. Values nominally live in
/// [0,255] but are never clamped while processing.
template <std::floating_point T>
class BasicPlane {
public:
  using value_type = T;

  BasicPlane() = default;

  BasicPlane(std::size_t width, std::size_t height, T fill = T(0))
      : width_(width), height_(height), data_(width * height, fill) {
    if (width == 0 || height == 0) {
      throw ArgumentError("plane dimensions must be at least 1x1");
    }
  }

  BasicPlane(std::size_t width, std::size_t height, std::vector<T> data)
      : width_(width), height_(height), data_(std::move(data)) {
    if (width == 0 || height == 0) {
      throw ArgumentError("plane dimensions must be at least 1x1");
    }
    if (data_.size() != width * height) {
      throw ArgumentError("plane data length does not match width*height");
    }
  }

  /// Builds a plane from nested rows, mostly for tests: `{{1,2},{3,4}}`.
  static BasicPlane from_rows(std::initializer_list<std::initializer_list<T>> rows) {
    const std::size_t h = rows.size();
    const std::size_t w = h ? rows.begin()->size() : 0;
    std::vector<T> data;
    data.reserve(w * h);
    for (const auto& row : rows) {
      if (row.size() != w) throw ArgumentError("ragged rows");
      data.insert(data.end(), row.begin(), row.end());
    }
    return BasicPlane(w, h, std::move(data));
  }

  [[nodiscard]] std::size_t width() const noexcept { return width_; }
  [[nodiscard]] std::size_t height() const noexcept { return height_; }
  [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
  [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t row, std::size_t col) noexcept { return data_[row * width_ + col]; }
  const T& operator()(std::size_t row, std::size_t col) const noexcept {
    return data_[row * width_ + col];
  }

  [[nodiscard]] std::span<T> values() noexcept { return data_; }
  [[nodiscard]] std::span<const T> values() const noexcept { return data_; }

  [[nodiscard]] std::span<T> row(std::size_t r) noexcept {
    return std::span<T>(data_).subspan(r * width_, width_);
  }
  [[nodiscard]] std::span<const T> row(std::size_t r) const noexcept {
    return std::span<const T>(data_).subspan(r * width_, width_);
  }

  [[nodiscard]] bool same_shape(const BasicPlane& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  [[nodiscard]] bool all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](T v) { return std::isfinite(v); });
  }

  friend bool operator==(const BasicPlane&, const BasicPlane&) = default;

private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<T> data_;
};

/// 1 to 3 equally sized planes plus the size the image had before padding.
template <std::floating_point T>
class BasicImage {
public:
  using plane_type = BasicPlane<T>;

  BasicImage() = default;

  explicit BasicImage(std::vector<plane_type> planes)
      : planes_(std::move(planes)) {
    validate();
    orig_width_ = planes_.front().width();
    orig_height_ = planes_.front().height();
  }

  BasicImage(std::vector<plane_type> planes, std::size_t orig_width, std::size_t orig_height)
      : planes_(std::move(planes)), orig_width_(orig_width), orig_height_(orig_height) {
    validate();
    if (orig_width_ == 0 || orig_height_ == 0 || orig_width_ > width() ||
        orig_height_ > height()) {
      throw ArgumentError("original size must be within the padded size");
    }
  }

  [[nodiscard]] std::size_t channels() const noexcept { return planes_.size(); }
  [[nodiscard]] std::size_t width() const noexcept { return planes_.front().width(); }
  [[nodiscard]] std::size_t height() const noexcept { return planes_.front().height(); }
  [[nodiscard]] std::size_t orig_width() const noexcept { return orig_width_; }
  [[nodiscard]] std::size_t orig_height() const noexcept { return orig_height_; }

  [[nodiscard]] const plane_type& plane(std::size_t c) const { return planes_.at(c); }
  [[nodiscard]] plane_type& plane(std::size_t c) { return planes_.at(c); }
  [[nodiscard]] const std::vector<plane_type>& planes() const noexcept { return planes_; }

  [[nodiscard]] bool same_shape(const BasicImage& other) const noexcept {
    return channels() == other.channels() && planes_.front().same_shape(other.planes_.front());
  }

  friend bool operator==(const BasicImage&, const BasicImage&) = default;

private:
  void validate() const {
    if (planes_.empty() || planes_.size() > 3) {
      throw ArgumentError("an image holds between 1 and 3 planes");
    }
    for (const auto& p : planes_) {
      if (p.empty()) throw ArgumentError("empty plane");
      if (!p.same_shape(planes_.front())) throw ArgumentError("planes differ in size");
    }
  }

  std::vector<plane_type> planes_;
  std::size_t orig_width_ = 0;
  std::size_t orig_height_ = 0;
};

using Plane = BasicPlane<double>;
using ImageBuf = BasicImage<double>;

/// Applies `fn` to every plane and keeps the original-size metadata.
template <std::floating_point T, typename Fn>
BasicImage<T> map_planes(const BasicImage<T>& img, Fn&& fn) {
  std::vector<BasicPlane<T>> out;
  out.reserve(img.channels());
  for (const auto& p : img.planes()) out.push_back(fn(p));
  return BasicImage<T>(std::move(out));
}

/// 8-bit conversion: round half away from zero, then clamp to [0,255].
template <std::floating_point T>
inline std::uint8_t to_byte(T v) noexcept {
  const T r = std::round(v);
  if (!(r > T(0))) return 0;
  if (r >= T(255)) return 255;
  return static_cast<std::uint8_t>(r);
}

template <std::floating_point T>
BasicPlane<T> quantize(const BasicPlane<T>& p) {
  BasicPlane<T> out(p.width(), p.height());
  std::transform(p.values().begin(), p.values().end(), out.values().begin(),
                 [](T v) { return static_cast<T>(to_byte(v)); });
  return out;
}

template <std::floating_point T>
BasicImage<T> quantize(const BasicImage<T>& img) {
  return BasicImage<T>(map_planes(img, [](const BasicPlane<T>& p) { return quantize(p); }).planes(),
                       img.orig_width(), img.orig_height());
}

template <std::floating_point T>
BasicPlane<T> crop(const BasicPlane<T>& p, std::size_t width, std::size_t height) {
  if (width == 0 || height == 0 || width > p.width() || height > p.height()) {
    throw ArgumentError("crop size exceeds plane size");
  }
  BasicPlane<T> out(width, height);
  for (std::size_t r = 0; r < height; ++r) {
    const auto src = p.row(r).first(width);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

/// Drops the padding; the result's original size equals its size.
template <std::floating_point T>
BasicImage<T> crop_to_original(const BasicImage<T>& img) {
  const auto w = img.orig_width();
  const auto h = img.orig_height();
  return map_planes(img, [w, h](const BasicPlane<T>& p) { return crop(p, w, h); });
}

namespace detail {

// Half-sample symmetric reflection of index i into [0, n).
inline std::size_t mirror_index(std::size_t i, std::size_t n) noexcept {
  const std::size_t period = 2 * n;
  const std::size_t k = i % period;
  return k < n ? k : period - 1 - k;
}

}  // namespace detail

inline std::size_t next_multiple(std::size_t v, std::size_t m) noexcept {
  return (v + m - 1) / m * m;
}

template <std::floating_point T>
BasicPlane<T> pad_plane(const BasicPlane<T>& p, std::size_t width, std::size_t height) {
  BasicPlane<T> out(width, height);
  for (std::size_t r = 0; r < height; ++r) {
    const auto src = p.row(detail::mirror_index(r, p.height()));
    auto dst = out.row(r);
    for (std::size_t c = 0; c < width; ++c) dst[c] = src[detail::mirror_index(c, p.width())];
  }
  return out;
}

/// Extends each axis to the next multiple of `m` by mirroring border rows and
/// columns. The original size already recorded in `img` is kept.
template <std::floating_point T>
BasicImage<T> pad_to_multiple(const BasicImage<T>& img, std::size_t m) {
  if (m == 0) throw ArgumentError("padding multiple must be positive");
  const auto w = next_multiple(img.width(), m);
  const auto h = next_multiple(img.height(), m);
  if (w == img.width() && h == img.height()) return img;
  std::vector<BasicPlane<T>> planes;
  planes.reserve(img.channels());
  for (const auto& p : img.planes()) planes.push_back(pad_plane(p, w, h));
  return BasicImage<T>(std::move(planes), img.orig_width(), img.orig_height());
}

/// v' = clamp(v/255 + N(mean, std), 0, 1) * 255, one draw per sample in
/// channel-major, row-major order from a generator seeded with `seed`.
template <std::floating_point T>
BasicImage<T> add_gaussian_noise(const BasicImage<T>& img, double mean, double std_dev,
                                 std::uint64_t seed) {
  if (!(std_dev >= 0.0) || !std::isfinite(std_dev) || !std::isfinite(mean)) {
    throw ArgumentError("noise standard deviation must be finite and non-negative");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(mean, std_dev > 0.0 ? std_dev : 1.0);
  std::vector<BasicPlane<T>> planes;
  planes.reserve(img.channels());
  for (const auto& p : img.planes()) {
    BasicPlane<T> out(p.width(), p.height());
    auto src = p.values();
    auto dst = out.values();
    for (std::size_t i = 0; i < src.size(); ++i) {
      const double n = std_dev > 0.0 ? normal(rng) : mean;
      // Same as clamp(v/255 + n, 0, 1) * 255, but exact for n == 0.
      dst[i] = static_cast<T>(std::clamp(static_cast<double>(src[i]) + 255.0 * n, 0.0, 255.0));
    }
    planes.push_back(std::move(out));
  }
  return BasicImage<T>(std::move(planes), img.orig_width(), img.orig_height());
}

}  // namespace ro3
