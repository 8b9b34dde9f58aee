#include <gtest/gtest.h>

#include <bit>
#include <cstdint>
#include <vector>

#include "ro3/catalyst.hpp"
#include "ro3/codec.hpp"
#include "ro3/container.hpp"

using ro3::BytePlanes;
using ro3::CodecId;
using ro3::Ro3Container;

namespace {

Ro3Container sample() {
  Ro3Container c;
  c.flags = ro3::kFlagDeblur;
  c.codec = CodecId::Png;
  c.basis_id = 1;
  c.channels = 3;
  c.orig_width = 0x01020304;
  c.orig_height = 1080;
  c.ap = 1e-4f;
  c.payload = {9, 8, 7, 6, 5};
  return c;
}

BytePlanes ramp_planes(std::size_t w, std::size_t h, std::size_t channels) {
  BytePlanes bp{w, h, {}};
  for (std::size_t c = 0; c < channels; ++c) {
    std::vector<std::uint8_t> p(w * h);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<std::uint8_t>((i * 7 + c * 50) % 256);
    bp.planes.push_back(p);
  }
  return bp;
}

}  // namespace

TEST(Container, HeaderLayoutFieldByField) {
  const auto bytes = ro3::serialize(sample());
  ASSERT_EQ(bytes.size(), 32u + 5u);
  const std::vector<std::uint8_t> header(bytes.begin(), bytes.begin() + 32);
  const std::uint32_t ap_bits = std::bit_cast<std::uint32_t>(1e-4f);
  const std::vector<std::uint8_t> expected{
      'R', 'O', '3', 'C',                     // magic
      1,                                      // version
      0x01,                                   // flags
      3,                                      // codec id
      1,                                      // basis id
      3,                                      // channels
      0, 0, 0,                                // reserved
      0x04, 0x03, 0x02, 0x01,                 // width
      0x38, 0x04, 0x00, 0x00,                 // height 1080
      static_cast<std::uint8_t>(ap_bits), static_cast<std::uint8_t>(ap_bits >> 8),
      static_cast<std::uint8_t>(ap_bits >> 16), static_cast<std::uint8_t>(ap_bits >> 24),
      5, 0, 0, 0, 0, 0, 0, 0,                 // payload length
  };
  EXPECT_EQ(header, expected);
  EXPECT_EQ(ap_bits, 0x38D1B717u);
  EXPECT_EQ(std::vector<std::uint8_t>(bytes.begin() + 32, bytes.end()),
            (std::vector<std::uint8_t>{9, 8, 7, 6, 5}));
}

TEST(Container, RoundTripIsBitExact) {
  const auto c = sample();
  const auto bytes = ro3::serialize(c);
  const auto parsed = ro3::parse(bytes);
  EXPECT_EQ(parsed, c);
  EXPECT_EQ(ro3::serialize(parsed), bytes);
  EXPECT_EQ(parsed.file_size(), bytes.size());
  EXPECT_TRUE(parsed.deblur_recommended());
}

TEST(Container, RejectsMalformedInput) {
  const auto good = ro3::serialize(sample());
  auto with = [&](std::size_t offset, std::uint8_t value) {
    auto b = good;
    b[offset] = value;
    return b;
  };
  EXPECT_THROW(ro3::parse(std::vector<std::uint8_t>(good.begin(), good.begin() + 31)), ro3::FormatError);
  EXPECT_THROW(ro3::parse(with(0, 'X')), ro3::FormatError);
  EXPECT_THROW(ro3::parse(with(4, 2)), ro3::FormatError);
  EXPECT_THROW(ro3::parse(with(6, 9)), ro3::FormatError);
  EXPECT_THROW(ro3::parse(with(7, 2)), ro3::FormatError);
  EXPECT_THROW(ro3::parse(with(8, 2)), ro3::FormatError);
  EXPECT_THROW(ro3::parse(with(10, 1)), ro3::FormatError);
  EXPECT_THROW(ro3::parse(with(24, 6)), ro3::FormatError);
  auto trailing = good;
  trailing.push_back(0);
  EXPECT_THROW(ro3::parse(trailing), ro3::FormatError);
  auto zero_w = sample();
  zero_w.orig_width = 0;
  EXPECT_THROW(ro3::serialize(zero_w), ro3::FormatError);
}

TEST(StoreCodec, PayloadLayoutAndRoundTrip) {
  const ro3::StoreCodec store;
  const auto planes = ramp_planes(3, 2, 3);
  const auto bytes = store.encode(planes, 50);
  ASSERT_EQ(bytes.size(), 3u * (8u + 6u));
  EXPECT_EQ(std::vector<std::uint8_t>(bytes.begin(), bytes.begin() + 8),
            (std::vector<std::uint8_t>{3, 0, 0, 0, 2, 0, 0, 0}));
  EXPECT_EQ(bytes[8], planes.planes[0][0]);
  EXPECT_EQ(bytes[14 + 8], planes.planes[1][0]);
  EXPECT_EQ(store.decode(bytes), planes);
  EXPECT_EQ(store.encode(planes, 1), bytes);
}

TEST(StoreCodec, RejectsCorruptPayloads) {
  const ro3::StoreCodec store;
  auto bytes = store.encode(ramp_planes(4, 4, 1), 90);
  EXPECT_THROW(store.decode(std::vector<std::uint8_t>(bytes.begin(), bytes.end() - 1)), ro3::FormatError);
  EXPECT_THROW(store.decode(std::vector<std::uint8_t>{}), ro3::FormatError);
  EXPECT_THROW(store.decode(std::vector<std::uint8_t>{1, 0, 0}), ro3::FormatError);
}

TEST(CodecRegistry, LooksUpByIdAndReportsMissingCodecs) {
  const auto reg = ro3::default_registry();
  EXPECT_TRUE(reg.contains(CodecId::Store));
  EXPECT_EQ(reg.get(CodecId::Store).name(), "store");
  EXPECT_FALSE(reg.contains(CodecId::Jpeg2000));
  EXPECT_THROW((void)reg.get(CodecId::Jpeg2000), ro3::FormatError);
  EXPECT_EQ(ro3::codec_id_from_name("jpg"), CodecId::Jpeg);
  EXPECT_EQ(ro3::codec_name(CodecId::Png), "png");
  EXPECT_THROW(ro3::codec_id_from_name("webp"), ro3::ArgumentError);
}

#if defined(RO3_HAVE_LIBPNG)
TEST(PngCodec, IsLossless) {
  const ro3::PngCodec png;
  for (std::size_t ch : {1u, 3u}) {
    const auto planes = ramp_planes(13, 9, ch);
    const auto bytes = png.encode(planes, 75);
    EXPECT_TRUE(ro3::is_png(bytes));
    EXPECT_EQ(png.decode(bytes), planes);
  }
  EXPECT_THROW(png.decode(std::vector<std::uint8_t>{1, 2, 3}), ro3::FormatError);
}
#endif

#if defined(RO3_HAVE_LIBJPEG)
TEST(JpegCodec, RoundTripsApproximately) {
  const ro3::JpegCodec jpeg;
  for (std::size_t ch : {1u, 3u}) {
    BytePlanes planes{32, 32, {}};
    for (std::size_t c = 0; c < ch; ++c) {
      std::vector<std::uint8_t> p(32 * 32);
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<std::uint8_t>(60 + (i % 32) * 3 + c * 10);
      planes.planes.push_back(p);
    }
    const auto bytes = jpeg.encode(planes, 95);
    EXPECT_TRUE(ro3::is_jpeg(bytes));
    const auto back = jpeg.decode(bytes);
    ASSERT_EQ(back.channels(), ch);
    ASSERT_EQ(back.width, 32u);
    for (std::size_t c = 0; c < ch; ++c) {
      for (std::size_t i = 0; i < back.planes[c].size(); ++i) {
        EXPECT_NEAR(back.planes[c][i], planes.planes[c][i], 6);
      }
    }
  }
  EXPECT_THROW(jpeg.encode(ramp_planes(4, 4, 1), 0), ro3::ArgumentError);
  EXPECT_THROW(jpeg.decode(std::vector<std::uint8_t>{0xFF, 0xD8, 0xFF, 0x00}), ro3::FormatError);
}
#endif
