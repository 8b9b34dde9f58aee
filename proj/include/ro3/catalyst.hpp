#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ro3/codec.hpp"
#include "ro3/container.hpp"
#include "ro3/deblur.hpp"
#include "ro3/error.hpp"
#include "ro3/image.hpp"
#include "ro3/ro3.hpp"
#include "ro3/wavelet.hpp"

#if defined(RO3_HAVE_LIBJPEG)
#include "ro3/codec_jpeg.hpp"
#endif
#if defined(RO3_HAVE_LIBPNG)
#include "ro3/codec_png.hpp"
#endif

// Compression catalyst: the encoder keeps only the approximation band of one
// analysis step, halved so it fits 8 bits, and hands that quarter-size image
// to an ordinary codec. The decoder rebuilds the detail bands with Ro3.
namespace ro3 {

/// Images smaller than this on either axis get the deblur hint flag.
inline constexpr std::size_t kDeblurHintSize = 512;

/// Store, plus JPEG and PNG when the library was built with them.
inline CodecRegistry default_registry() {
  CodecRegistry reg;
  reg.add(std::make_shared<StoreCodec>());
#if defined(RO3_HAVE_LIBJPEG)
  reg.add(std::make_shared<JpegCodec>());
#endif
#if defined(RO3_HAVE_LIBPNG)
  reg.add(std::make_shared<PngCodec>());
#endif
  return reg;
}

/// Half-scale approximation band LL/2 of every channel, quantized to 8 bits.
/// The image is mirror-padded to a multiple of 4 first so the stored planes
/// have even extents.
inline BytePlanes catalyst_planes(const ImageBuf& img, const WaveletBasis& basis) {
  const auto padded = pad_to_multiple(img, 4);
  const auto half = map_planes(padded, [&](const Plane& p) {
    auto ll = dwt2(p, basis).ll;
    for (auto& v : ll.values()) v *= 0.5;
    return ll;
  });
  return to_byte_planes(half);
}

/// Rebuilds full-size planes from the stored half-scale bands and crops them
/// to the original size.
inline ImageBuf catalyst_reconstruct(const BytePlanes& stored, std::size_t orig_width,
                                     std::size_t orig_height, const Ro3Params& params) {
  const auto small = from_byte_planes(stored);
  if (next_multiple(orig_width, 4) != 2 * small.width() ||
      next_multiple(orig_height, 4) != 2 * small.height()) {
    throw FormatError("catalyst: stored planes do not match the original size");
  }
  return map_planes(small, [&](const Plane& s) {
    return crop(ro3_reconstruct(s, params), orig_width, orig_height);
  });
}

inline Ro3Container encode(const ImageBuf& img, const WaveletBasis& basis,
                           const BackendCodec& codec, int quality, double ap = kDefaultAnchor) {
  if (quality < 1 || quality > 100) throw ArgumentError("encode: quality must be in 1..100");
  if (img.channels() == 2) throw ArgumentError("encode: only 1 or 3 channels are supported");
  if (!(ap > 0.0)) throw ArgumentError("encode: ap must be positive");
  Ro3Container c;
  c.codec = codec.id();
  c.basis_id = static_cast<std::uint8_t>(basis.id());
  c.channels = static_cast<std::uint8_t>(img.channels());
  c.orig_width = static_cast<std::uint32_t>(img.orig_width());
  c.orig_height = static_cast<std::uint32_t>(img.orig_height());
  c.ap = static_cast<float>(ap);
  if (img.orig_width() < kDeblurHintSize || img.orig_height() < kDeblurHintSize) {
    c.flags |= kFlagDeblur;
  }
  c.payload = codec.encode(catalyst_planes(crop_to_original(img), basis), quality);
  return c;
}

/// Decoding parameters recorded in the container: its ap and basis, with
/// the listing-faithful detail gain.
inline Ro3Params params_for(const Ro3Container& c) {
  Ro3Params p;
  p.ap = static_cast<double>(c.ap);
  p.basis = WaveletBasis::from_id(static_cast<BasisId>(c.basis_id));
  return p;
}

inline ImageBuf decode(const Ro3Container& c, const CodecRegistry& registry,
                       const Ro3Params& params, bool apply_deblur) {
  validate_header_fields(c);
  params.validate();
  const auto stored = registry.get(c.codec).decode(c.payload);
  if (stored.channels() != c.channels) {
    throw FormatError("decode: payload channel count differs from header");
  }
  auto out = catalyst_reconstruct(stored, c.orig_width, c.orig_height, params);
  return apply_deblur ? deblur(out) : out;
}

inline ImageBuf decode(const Ro3Container& c, const CodecRegistry& registry,
                       bool apply_deblur = false) {
  return decode(c, registry, params_for(c), apply_deblur);
}

/// Ro3 as a denoiser: the lossless encode/decode round trip, without the
/// container. Detail bands are dropped and re-estimated.
inline ImageBuf denoise_ro3(const ImageBuf& img, const Ro3Params& params) {
  params.validate();
  const auto base = crop_to_original(img);
  return catalyst_reconstruct(catalyst_planes(base, params.basis), base.width(), base.height(),
                              params);
}

}  // namespace ro3
