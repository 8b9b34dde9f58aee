#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <optional>
#include <vector>

#include "ro3/error.hpp"
#include "ro3/image.hpp"
#include "ro3/wavelet.hpp"

namespace ro3 {

enum class ThresholdMode { Hard, Soft };

/// How soft thresholding treats survivors below -lambda. `Symmetric` is
/// sgn(x)*max(|x|-lambda, 0). `Literal` subtracts lambda from every survivor,
/// so -10 with lambda 7 becomes -17; kept only for bit-compatibility with the
/// published MATLAB-style loop.
enum class SoftRule { Symmetric, Literal };

struct ThresholdSpec {
  ThresholdMode mode = ThresholdMode::Soft;
  double sigma = 0.0;
  double lambda = 0.0;
  std::size_t n = 1;
};

inline constexpr double kMadScale = 0.6745;

/// median(|c|) / 0.6745. An even count uses the mean of the two central
/// order statistics.
template <std::floating_point T>
double mad_sigma(std::span<const T> coeffs) {
  if (coeffs.empty()) throw ArgumentError("mad_sigma: empty coefficient set");
  std::vector<double> mags(coeffs.size());
  std::transform(coeffs.begin(), coeffs.end(), mags.begin(),
                 [](T v) { return std::abs(static_cast<double>(v)); });
  const std::size_t n = mags.size();
  const auto mid = mags.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(mags.begin(), mid, mags.end());
  double median = *mid;
  if (n % 2 == 0) {
    const double lower = *std::max_element(mags.begin(), mid);
    median = 0.5 * (lower + median);
  }
  return median / kMadScale;
}

template <std::floating_point T>
double mad_sigma(const BasicPlane<T>& coeffs) {
  return mad_sigma(coeffs.values());
}

/// sigma * sqrt(2 ln n).
inline double universal_threshold(double sigma, std::size_t n) {
  if (n < 1) throw ArgumentError("universal_threshold: n must be at least 1");
  if (!(sigma >= 0.0)) throw ArgumentError("universal_threshold: sigma must be non-negative");
  return sigma * std::sqrt(2.0 * std::log(static_cast<double>(n)));
}

template <std::floating_point T>
ThresholdSpec derive_threshold(const BasicPlane<T>& subband, ThresholdMode mode) {
  ThresholdSpec spec;
  spec.mode = mode;
  spec.n = subband.size();
  spec.sigma = mad_sigma(subband);
  spec.lambda = universal_threshold(spec.sigma, spec.n);
  return spec;
}

inline void check_lambda(double lambda) {
  if (!(lambda >= 0.0)) throw ArgumentError("threshold lambda must be non-negative");
}

/// Zeroes every coefficient with |x| <= lambda; survivors are kept verbatim.
template <std::floating_point T>
BasicPlane<T> hard_threshold(const BasicPlane<T>& p, double lambda) {
  check_lambda(lambda);
  BasicPlane<T> out = p;
  for (auto& v : out.values()) {
    if (std::abs(static_cast<double>(v)) <= lambda) v = T(0);
  }
  return out;
}

template <std::floating_point T>
BasicPlane<T> soft_threshold(const BasicPlane<T>& p, double lambda,
                             SoftRule rule = SoftRule::Symmetric) {
  check_lambda(lambda);
  BasicPlane<T> out = p;
  for (auto& v : out.values()) {
    const double x = static_cast<double>(v);
    if (std::abs(x) <= lambda) {
      v = T(0);
    } else if (x > 0.0 || rule == SoftRule::Literal) {
      v = static_cast<T>(x - lambda);
    } else {
      v = static_cast<T>(x + lambda);
    }
  }
  return out;
}

template <std::floating_point T>
BasicPlane<T> apply_threshold(const BasicPlane<T>& p, ThresholdMode mode, double lambda,
                              SoftRule rule = SoftRule::Symmetric) {
  return mode == ThresholdMode::Hard ? hard_threshold(p, lambda) : soft_threshold(p, lambda, rule);
}

struct DenoiseOptions {
  ThresholdMode mode = ThresholdMode::Soft;
  int levels = 1;
  SoftRule soft_rule = SoftRule::Symmetric;
  /// When set, replaces the per-subband universal threshold.
  std::optional<double> fixed_lambda;
};

/// Wavelet shrinkage of one plane whose extents are divisible by 2^levels.
/// Every detail subband at every level gets its own MAD sigma and universal
/// threshold (N = that subband's pixel count); the coarsest LL is untouched.
template <std::floating_point T>
BasicPlane<T> denoise_plane(const BasicPlane<T>& p, const WaveletBasis& basis,
                            const DenoiseOptions& opts) {
  auto pyr = dwt2_multi(p, basis, opts.levels);
  for (auto& q : pyr.levels) {
    for (BasicPlane<T>* band : {&q.lh, &q.hl, &q.hh}) {
      const double lambda =
          opts.fixed_lambda ? *opts.fixed_lambda : derive_threshold(*band, opts.mode).lambda;
      *band = apply_threshold(*band, opts.mode, lambda, opts.soft_rule);
    }
  }
  return idwt2_multi(pyr, basis);
}

/// Per-channel wavelet-thresholding denoiser. The image is mirror-padded to a
/// multiple of 2^levels, denoised and cropped back to its original size.
template <std::floating_point T>
BasicImage<T> denoise_threshold(const BasicImage<T>& img, const WaveletBasis& basis,
                                const DenoiseOptions& opts) {
  if (opts.levels < 1 || opts.levels > 30) throw ArgumentError("denoise: levels out of range");
  if (opts.fixed_lambda) check_lambda(*opts.fixed_lambda);
  const auto padded = pad_to_multiple(img, std::size_t{1} << opts.levels);
  auto out = map_planes(padded, [&](const BasicPlane<T>& p) { return denoise_plane(p, basis, opts); });
  return crop_to_original(BasicImage<T>(out.planes(), img.orig_width(), img.orig_height()));
}

template <std::floating_point T>
BasicImage<T> denoise_threshold(const BasicImage<T>& img, const WaveletBasis& basis, int levels,
                                ThresholdMode mode) {
  DenoiseOptions opts;
  opts.mode = mode;
  opts.levels = levels;
  return denoise_threshold(img, basis, opts);
}

}  // namespace ro3
