#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ro3/error.hpp"
#include "ro3/image.hpp"

namespace ro3 {

enum class BasisId : std::uint8_t { Haar = 0, Daub4 = 1 };

/// Orthonormal two-channel filter bank. The highpass is derived from the
/// lowpass as g[k] = (-1)^k h[L-1-k].
class WaveletBasis {
public:
  static WaveletBasis haar() {
    constexpr double s = 1.0 / std::numbers::sqrt2;
    return WaveletBasis(BasisId::Haar, {s, s});
  }

  // Daubechies scaling filter with 4 vanishing moments (8 taps).
  static WaveletBasis daub4() {
    return WaveletBasis(BasisId::Daub4, {
                                            0.2303778133088965008632911830440708500016,
                                            0.7148465705529156470899219552739926037076,
                                            0.6308807679298589078817163383006152202033,
                                            -0.0279837694168598542665776870095301834580,
                                            -0.1870348117190930840795706727890814195845,
                                            0.0308413818355607636060379079890870599550,
                                            0.0328830116668851996822369856114715012021,
                                            -0.0105974017850690321229655270114564519545,
                                        });
  }

  static WaveletBasis from_id(BasisId id) {
    switch (id) {
      case BasisId::Haar: return haar();
      case BasisId::Daub4: return daub4();
    }
    throw ArgumentError("unknown wavelet basis id");
  }

  /// Accepts "haar", "db1", "db4" and "daub4".
  static WaveletBasis from_name(std::string_view name) {
    if (name == "haar" || name == "db1") return haar();
    if (name == "db4" || name == "daub4") return daub4();
    throw ArgumentError("unknown wavelet basis: " + std::string(name));
  }

  [[nodiscard]] BasisId id() const noexcept { return id_; }
  [[nodiscard]] std::string_view name() const noexcept {
    return id_ == BasisId::Haar ? "haar" : "db4";
  }
  [[nodiscard]] std::span<const double> lowpass() const noexcept { return lowpass_; }
  [[nodiscard]] std::span<const double> highpass() const noexcept { return highpass_; }
  [[nodiscard]] std::size_t taps() const noexcept { return lowpass_.size(); }

  friend bool operator==(const WaveletBasis& a, const WaveletBasis& b) noexcept {
    return a.id_ == b.id_;
  }

private:
  WaveletBasis(BasisId id, std::vector<double> lowpass) : id_(id), lowpass_(std::move(lowpass)) {
    const std::size_t n = lowpass_.size();
    highpass_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      highpass_[k] = (k % 2 == 0 ? 1.0 : -1.0) * lowpass_[n - 1 - k];
    }
  }

  BasisId id_;
  std::vector<double> lowpass_;
  std::vector<double> highpass_;
};

/// The four subbands produced by one analysis step. `lh` is lowpass along
/// rows and highpass along columns (horizontal detail), `hl` the transpose
/// role (vertical detail), `hh` the diagonal detail.
template <std::floating_point T>
struct BasicSubbandQuad {
  BasicPlane<T> ll, lh, hl, hh;
  int level = 1;

  [[nodiscard]] std::size_t width() const noexcept { return ll.width(); }
  [[nodiscard]] std::size_t height() const noexcept { return ll.height(); }

  [[nodiscard]] bool well_formed() const noexcept {
    return !ll.empty() && ll.same_shape(lh) && ll.same_shape(hl) && ll.same_shape(hh);
  }
};

using SubbandQuad = BasicSubbandQuad<double>;

namespace detail {

// One-dimensional periodized analysis of `n` samples spaced `stride` apart.
// lo[i] = sum_k h[k] x[(2i+k) mod n], hi likewise with g; fixed k order.
template <std::floating_point T>
void analyze_1d(const T* x, std::size_t n, std::size_t stride, std::span<const double> h,
                std::span<const double> g, T* lo, T* hi, std::size_t out_stride) {
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double a = 0.0;
    double d = 0.0;
    for (std::size_t k = 0; k < h.size(); ++k) {
      const double v = static_cast<double>(x[((2 * i + k) % n) * stride]);
      a += h[k] * v;
      d += g[k] * v;
    }
    lo[i * out_stride] = static_cast<T>(a);
    hi[i * out_stride] = static_cast<T>(d);
  }
}

// Transpose of analyze_1d, which for an orthonormal bank is its inverse.
template <std::floating_point T>
void synthesize_1d(const T* lo, const T* hi, std::size_t half, std::size_t in_stride,
                   std::span<const double> h, std::span<const double> g, T* x,
                   std::size_t stride) {
  const std::size_t n = 2 * half;
  std::vector<double> acc(n, 0.0);
  for (std::size_t i = 0; i < half; ++i) {
    const double a = static_cast<double>(lo[i * in_stride]);
    const double d = static_cast<double>(hi[i * in_stride]);
    for (std::size_t k = 0; k < h.size(); ++k) acc[(2 * i + k) % n] += h[k] * a + g[k] * d;
  }
  for (std::size_t j = 0; j < n; ++j) x[j * stride] = static_cast<T>(acc[j]);
}

}  // namespace detail

/// One analysis step: rows are filtered first, then columns, each followed
/// by dyadic downsampling. Boundaries are handled by periodization, which
/// keeps the transform orthonormal for every even extent. A constant plane
/// of value c gives LL = 2c and zero details.
template <std::floating_point T>
BasicSubbandQuad<T> dwt2(const BasicPlane<T>& p, const WaveletBasis& basis) {
  const std::size_t w = p.width();
  const std::size_t h = p.height();
  if (w % 2 != 0 || h % 2 != 0) throw ArgumentError("dwt2 requires even width and height");
  const std::size_t hw = w / 2;
  const std::size_t hh = h / 2;
  const auto lo_f = basis.lowpass();
  const auto hi_f = basis.highpass();

  // Row pass: L and H are hw x h.
  BasicPlane<T> lo(hw, h);
  BasicPlane<T> hi(hw, h);
  for (std::size_t r = 0; r < h; ++r) {
    detail::analyze_1d(p.row(r).data(), w, 1, lo_f, hi_f, lo.row(r).data(), hi.row(r).data(), 1);
  }

  BasicSubbandQuad<T> q{BasicPlane<T>(hw, hh), BasicPlane<T>(hw, hh), BasicPlane<T>(hw, hh),
                        BasicPlane<T>(hw, hh), 1};
  for (std::size_t c = 0; c < hw; ++c) {
    detail::analyze_1d(&lo(0, c), h, hw, lo_f, hi_f, &q.ll(0, c), &q.lh(0, c), hw);
    detail::analyze_1d(&hi(0, c), h, hw, lo_f, hi_f, &q.hl(0, c), &q.hh(0, c), hw);
  }
  return q;
}

/// Exact inverse of dwt2.
template <std::floating_point T>
BasicPlane<T> idwt2(const BasicSubbandQuad<T>& q, const WaveletBasis& basis) {
  if (!q.well_formed()) throw ArgumentError("idwt2: subband dimensions differ");
  const std::size_t hw = q.width();
  const std::size_t hh = q.height();
  const auto lo_f = basis.lowpass();
  const auto hi_f = basis.highpass();

  BasicPlane<T> lo(hw, 2 * hh);
  BasicPlane<T> hi(hw, 2 * hh);
  for (std::size_t c = 0; c < hw; ++c) {
    detail::synthesize_1d(&q.ll(0, c), &q.lh(0, c), hh, hw, lo_f, hi_f, &lo(0, c), hw);
    detail::synthesize_1d(&q.hl(0, c), &q.hh(0, c), hh, hw, lo_f, hi_f, &hi(0, c), hw);
  }
  BasicPlane<T> out(2 * hw, 2 * hh);
  for (std::size_t r = 0; r < 2 * hh; ++r) {
    detail::synthesize_1d(lo.row(r).data(), hi.row(r).data(), hw, 1, lo_f, hi_f,
                          out.row(r).data(), 1);
  }
  return out;
}

/// Multi-level decomposition. `levels[0]` is the finest quad; only the
/// coarsest quad's `ll` is meaningful for reconstruction (finer LLs are kept
/// for inspection).
template <std::floating_point T>
struct BasicPyramid {
  std::vector<BasicSubbandQuad<T>> levels;

  [[nodiscard]] const BasicPlane<T>& coarsest_ll() const { return levels.back().ll; }
};

using Pyramid = BasicPyramid<double>;

template <std::floating_point T>
BasicPyramid<T> dwt2_multi(const BasicPlane<T>& p, const WaveletBasis& basis, int levels) {
  if (levels < 1) throw ArgumentError("dwt2_multi: levels must be at least 1");
  const std::size_t m = std::size_t{1} << levels;
  if (levels > 30 || p.width() % m != 0 || p.height() % m != 0) {
    throw ArgumentError("dwt2_multi: dimensions must be divisible by 2^levels");
  }
  BasicPyramid<T> pyr;
  pyr.levels.reserve(static_cast<std::size_t>(levels));
  const BasicPlane<T>* src = &p;
  for (int i = 1; i <= levels; ++i) {
    auto q = dwt2(*src, basis);
    q.level = i;
    pyr.levels.push_back(std::move(q));
    src = &pyr.levels.back().ll;
  }
  return pyr;
}

template <std::floating_point T>
BasicPlane<T> idwt2_multi(const BasicPyramid<T>& pyr, const WaveletBasis& basis) {
  if (pyr.levels.empty()) throw ArgumentError("idwt2_multi: empty pyramid");
  BasicPlane<T> current = pyr.levels.back().ll;
  for (auto it = pyr.levels.rbegin(); it != pyr.levels.rend(); ++it) {
    BasicSubbandQuad<T> q{std::move(current), it->lh, it->hl, it->hh, it->level};
    current = idwt2(q, basis);
  }
  return current;
}

}  // namespace ro3
