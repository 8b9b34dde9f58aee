#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>

#include "ro3/error.hpp"
#include "ro3/image.hpp"

namespace ro3 {

inline constexpr double kMax8Bit = 255.0;

struct MetricsReport {
  double mse = 0.0;
  double psnr_db = std::numeric_limits<double>::infinity();
  double mae = 0.0;
  std::optional<double> cr;
  std::optional<double> pss_percent;
  double max_value = kMax8Bit;
};

namespace detail {

template <std::floating_point T>
void require_same_shape(const BasicImage<T>& a, const BasicImage<T>& b) {
  if (!a.same_shape(b)) throw ArgumentError("metrics: images differ in size or channel count");
}

// Sums fn(a_i - b_i) over every sample in plane order, row-major.
template <std::floating_point T, typename Fn>
double sum_over_samples(const BasicImage<T>& a, const BasicImage<T>& b, Fn fn) {
  double acc = 0.0;
  for (std::size_t c = 0; c < a.channels(); ++c) {
    const auto x = a.plane(c).values();
    const auto y = b.plane(c).values();
    for (std::size_t i = 0; i < x.size(); ++i) {
      acc += fn(static_cast<double>(x[i]) - static_cast<double>(y[i]));
    }
  }
  return acc;
}

template <std::floating_point T>
double sample_count(const BasicImage<T>& img) {
  return static_cast<double>(img.width() * img.height() * img.channels());
}

}  // namespace detail

/// Mean squared error over all samples; for colour images this is the sum
/// over the three channels divided by pixels * 3.
template <std::floating_point T>
double mse(const BasicImage<T>& a, const BasicImage<T>& b) {
  detail::require_same_shape(a, b);
  return detail::sum_over_samples(a, b, [](double d) { return d * d; }) / detail::sample_count(a);
}

template <std::floating_point T>
double mae(const BasicImage<T>& a, const BasicImage<T>& b) {
  detail::require_same_shape(a, b);
  return detail::sum_over_samples(a, b, [](double d) { return std::abs(d); }) /
         detail::sample_count(a);
}

/// 10 log10(max^2 / mse); +inf when mse is 0.
inline double psnr_from_mse(double mse_value, double max_value = kMax8Bit) {
  if (!(mse_value >= 0.0)) throw ArgumentError("psnr: mse must be non-negative");
  if (mse_value == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(max_value * max_value / mse_value);
}

template <std::floating_point T>
double psnr(const BasicImage<T>& a, const BasicImage<T>& b, double max_value = kMax8Bit) {
  return psnr_from_mse(mse(a, b), max_value);
}

inline double compression_ratio(std::uint64_t uncompressed_bytes, std::uint64_t compressed_bytes) {
  if (uncompressed_bytes == 0 || compressed_bytes == 0) {
    throw ArgumentError("cr: sizes must be positive");
  }
  return static_cast<double>(uncompressed_bytes) / static_cast<double>(compressed_bytes);
}

/// Percent space savings, (1 - 1/cr) * 100.
inline double pss(double cr) {
  if (!(cr > 0.0)) throw ArgumentError("pss: compression ratio must be positive");
  return (1.0 - 1.0 / cr) * 100.0;
}

template <std::floating_point T>
MetricsReport compute_metrics(const BasicImage<T>& ref, const BasicImage<T>& test,
                              double max_value = kMax8Bit) {
  MetricsReport report;
  report.max_value = max_value;
  report.mse = mse(ref, test);
  report.mae = mae(ref, test);
  report.psnr_db = psnr_from_mse(report.mse, max_value);
  return report;
}

inline void attach_sizes(MetricsReport& report, std::uint64_t uncompressed_bytes,
                         std::uint64_t compressed_bytes) {
  report.cr = compression_ratio(uncompressed_bytes, compressed_bytes);
  report.pss_percent = pss(*report.cr);
}

struct Histogram {
  std::array<std::uint64_t, 256> bins{};
  std::uint64_t total = 0;
};

/// 256 unit-width bins; each sample lands in its rounded, clamped value.
template <std::floating_point T>
Histogram histogram(const BasicPlane<T>& p) {
  Histogram h;
  for (const T v : p.values()) ++h.bins[to_byte(v)];
  h.total = p.size();
  return h;
}

/// Intersection of the two normalised histograms, in [0,1]. Evaluated as
/// sum_i min(a_i * |b|, b_i * |a|) / (|a| |b|) in integers, so the result is
/// exactly 1 iff the normalised histograms are identical.
inline double histogram_similarity(const Histogram& a, const Histogram& b) {
  if (a.total == 0 || b.total == 0) throw ArgumentError("histogram_similarity: empty histogram");
  using wide = unsigned __int128;
  wide num = 0;
  for (std::size_t i = 0; i < a.bins.size(); ++i) {
    num += std::min(wide{a.bins[i]} * b.total, wide{b.bins[i]} * a.total);
  }
  const wide den = wide{a.total} * b.total;
  if (num >= den) return 1.0;
  return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
}

}  // namespace ro3
