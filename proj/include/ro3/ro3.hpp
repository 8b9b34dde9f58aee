#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>

#include "ro3/error.hpp"
#include "ro3/image.hpp"
#include "ro3/wavelet.hpp"

// Rule-of-Three (Ro3) detail reconstruction.
//
// One analysis step maps a fine approximation band LL0 (2W x 2H) to a coarse
// quad {LL1, LH1, HL1, HH1} (W x H). Subbands of consecutive levels share the
// same histogram profile, so each missing fine detail pixel is inferred by
// cross-multiplication:
//
//     D0(r1,c1) = D1(r2,c2) * (ap + LL0(r1,c1)) / (ap + LL1(r2,c2))
//
// where (r2,c2) = (r1/2, c1/2) and ap is a small anchoring constant that
// keeps the ratio defined over near-black pixels.
namespace ro3 {

enum class DetailGain {
  /// Estimated details are used at their raw magnitude and only LL is
  /// doubled before synthesis.
  Faithful,
  /// Estimated details are doubled together with LL.
  Corrected,
};

inline constexpr double kDefaultAnchor = 1e-4;

struct Ro3Params {
  double ap = kDefaultAnchor;
  WaveletBasis basis = WaveletBasis::haar();
  DetailGain detail_gain = DetailGain::Faithful;

  void validate() const {
    if (!(ap > 0.0) || !std::isfinite(ap)) throw ArgumentError("ro3: ap must be positive");
  }
};

/// Estimates one fine detail subband (2W x 2H) from the fine approximation
/// and the coarse approximation/detail pair (W x H).
template <std::floating_point T>
BasicPlane<T> ro3_estimate_detail(const BasicPlane<T>& ll_fine, const BasicPlane<T>& ll_coarse,
                                  const BasicPlane<T>& d_coarse, double ap) {
  if (!(ap > 0.0) || !std::isfinite(ap)) throw ArgumentError("ro3: ap must be positive");
  if (!ll_coarse.same_shape(d_coarse) || ll_fine.width() != 2 * ll_coarse.width() ||
      ll_fine.height() != 2 * ll_coarse.height()) {
    throw ArgumentError("ro3: fine plane must be twice the coarse planes per axis");
  }
  BasicPlane<T> out(ll_fine.width(), ll_fine.height());
  for (std::size_t r2 = 0; r2 < ll_coarse.height(); ++r2) {
    for (std::size_t c2 = 0; c2 < ll_coarse.width(); ++c2) {
      const double denom = ap + static_cast<double>(ll_coarse(r2, c2));
      if (denom == 0.0) throw DomainError("ro3: approximation pixel equals -ap");
      const double detail = static_cast<double>(d_coarse(r2, c2));
      for (std::size_t dr = 0; dr < 2; ++dr) {
        for (std::size_t dc = 0; dc < 2; ++dc) {
          const std::size_t r1 = 2 * r2 + dr;
          const std::size_t c1 = 2 * c2 + dc;
          // Evaluated as detail * (ap + fine) / denom, left to right.
          out(r1, c1) = static_cast<T>(detail * (ap + static_cast<double>(ll_fine(r1, c1))) / denom);
        }
      }
    }
  }
  return out;
}

/// Treats `ll` as an approximation band and synthesizes the plane one level
/// finer (twice the size per axis). `ll` must have even extents.
template <std::floating_point T>
BasicPlane<T> ro3_reconstruct(const BasicPlane<T>& ll, const Ro3Params& params) {
  params.validate();
  const auto coarse = dwt2(ll, params.basis);
  BasicSubbandQuad<T> fine{ll, ro3_estimate_detail(ll, coarse.ll, coarse.lh, params.ap),
                           ro3_estimate_detail(ll, coarse.ll, coarse.hl, params.ap),
                           ro3_estimate_detail(ll, coarse.ll, coarse.hh, params.ap), 1};
  for (auto& v : fine.ll.values()) v *= T(2);
  if (params.detail_gain == DetailGain::Corrected) {
    for (BasicPlane<T>* band : {&fine.lh, &fine.hl, &fine.hh}) {
      for (auto& v : band->values()) v *= T(2);
    }
  }
  return idwt2(fine, params.basis);
}

/// x2 superresolution per axis. The input is mirror-padded to a multiple of 4
/// and the result cropped to exactly twice the original size.
template <std::floating_point T>
BasicImage<T> superresolve_once(const BasicImage<T>& img, const Ro3Params& params) {
  params.validate();
  const auto padded = pad_to_multiple(img, 4);
  const auto w = 2 * img.orig_width();
  const auto h = 2 * img.orig_height();
  return map_planes(padded, [&](const BasicPlane<T>& p) {
    return crop(ro3_reconstruct(p, params), w, h);
  });
}

/// x4 superresolution per axis: superresolve_once applied twice.
template <std::floating_point T>
BasicImage<T> superresolve_twice(const BasicImage<T>& img, const Ro3Params& params) {
  return superresolve_once(superresolve_once(img, params), params);
}

}  // namespace ro3
