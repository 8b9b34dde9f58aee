#pragma once

#include <concepts>
#include <cstddef>

#include "ro3/image.hpp"

namespace ro3 {

/// Fixed 7x7 separable sharpening mask: a vertical box of -0.0129 taps, a
/// horizontal 7-tap sum of that result, plus 1.63 times the input pixel.
struct DeblurKernel {
  static constexpr std::size_t window = 7;
  static constexpr std::size_t pad = window / 2;
  static constexpr double vertical_tap = -0.0129;
  static constexpr double center_boost = 1.63;

  /// Response to a constant input away from the borders.
  static constexpr double dc_gain() { return center_boost + double(window * window) * vertical_tap; }
};

namespace detail {

// Two-pass filter over an already zero-padded plane. Rows/columns closer than
// `pad` to the padded border are passed through unchanged.
template <std::floating_point T>
BasicPlane<T> deblur_padded(const BasicPlane<T>& in) {
  using K = DeblurKernel;
  const std::size_t rows = in.height();
  const std::size_t cols = in.width();
  BasicPlane<T> vert = in;
  BasicPlane<T> out = in;
  if (rows < K::window) return out;

  for (std::size_t r = K::pad; r + K::pad < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (std::size_t k = 0; k < K::window; ++k) {
        acc += static_cast<double>(in(r - K::pad + k, c)) * K::vertical_tap;
      }
      vert(r, c) = static_cast<T>(acc);
    }
  }
  if (cols < K::window) return out;

  for (std::size_t c = K::pad; c + K::pad < cols; ++c) {
    for (std::size_t r = K::pad; r + K::pad < rows; ++r) {
      double acc = 0.0;
      for (std::size_t k = 0; k < K::window; ++k) {
        acc += static_cast<double>(vert(r, c - K::pad + k));
      }
      out(r, c) = static_cast<T>(acc + K::center_boost * static_cast<double>(in(r, c)));
    }
  }
  return out;
}

}  // namespace detail

/// Zero-pads by 3 on every side, runs the two-pass mask and crops the
/// padding again. Output size equals input size.
template <std::floating_point T>
BasicPlane<T> deblur(const BasicPlane<T>& p) {
  constexpr std::size_t d = DeblurKernel::pad;
  BasicPlane<T> padded(p.width() + 2 * d, p.height() + 2 * d);
  for (std::size_t r = 0; r < p.height(); ++r) {
    for (std::size_t c = 0; c < p.width(); ++c) padded(r + d, c + d) = p(r, c);
  }
  const auto filtered = detail::deblur_padded(padded);
  BasicPlane<T> out(p.width(), p.height());
  for (std::size_t r = 0; r < p.height(); ++r) {
    for (std::size_t c = 0; c < p.width(); ++c) out(r, c) = filtered(r + d, c + d);
  }
  return out;
}

template <std::floating_point T>
BasicImage<T> deblur(const BasicImage<T>& img) {
  auto out = map_planes(img, [](const BasicPlane<T>& p) { return deblur(p); });
  return BasicImage<T>(out.planes(), img.orig_width(), img.orig_height());
}

}  // namespace ro3
