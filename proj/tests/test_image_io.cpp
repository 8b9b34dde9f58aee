#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <vector>

#include "oracles.hpp"
#include "ro3/image.hpp"
#include "ro3/image_io.hpp"
#include "ro3/pnm.hpp"

namespace fs = std::filesystem;
using ro3::ImageBuf;
using ro3::Plane;

namespace {

class TempDir {
public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("ro3_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

private:
  fs::path path_;
};

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST(Pnm, DecodesGrayscaleBytesExactly) {
  auto file = bytes_of("P5\n2 2\n255\n");
  for (int b : {0, 128, 255, 64}) file.push_back(static_cast<std::uint8_t>(b));
  const auto img = ro3::pnm::decode(file);
  ASSERT_EQ(img.channels(), 1u);
  EXPECT_EQ(img.plane(0), Plane::from_rows({{0, 128}, {255, 64}}));
}

TEST(Pnm, DecodesWhitePpmIntoThreePlanes) {
  auto file = bytes_of("P6\n# comment\n1 1\n255\n");
  file.insert(file.end(), {255, 255, 255});
  const auto img = ro3::pnm::decode(file);
  ASSERT_EQ(img.channels(), 3u);
  for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(img.plane(c), Plane::from_rows({{255}}));
}

TEST(Pnm, RejectsTruncatedAndUnsupportedFiles) {
  auto file = bytes_of("P5\n2 2\n255\n");
  file.push_back(1);
  EXPECT_THROW(ro3::pnm::decode(file), ro3::FormatError);
  EXPECT_THROW(ro3::pnm::decode(bytes_of("P5\n2")), ro3::FormatError);
  EXPECT_THROW(ro3::pnm::decode(bytes_of("P2\n1 1\n255\n0")), ro3::FormatError);
  EXPECT_THROW(ro3::pnm::decode(bytes_of("P5\n0 4\n255\n")), ro3::FormatError);
  EXPECT_THROW(ro3::pnm::decode(bytes_of("P5\n1 1\n65535\n\0\0")), ro3::FormatError);
  EXPECT_THROW(ro3::decode_image(bytes_of("GIF89a")), ro3::FormatError);
}

TEST(SaveImage, RoundsHalfAwayAndClamps) {
  EXPECT_EQ(ro3::to_byte(99.79), 100);
  EXPECT_EQ(ro3::to_byte(-3.2), 0);
  EXPECT_EQ(ro3::to_byte(260.0), 255);
  EXPECT_EQ(ro3::to_byte(2.5), 3);
  EXPECT_EQ(ro3::to_byte(254.5), 255);
  EXPECT_EQ(ro3::to_byte(-0.5), 0);
  EXPECT_EQ(ro3::to_byte(std::nan("")), 0);
}

TEST(SaveImage, CropsToOriginalSize) {
  TempDir dir;
  ImageBuf img({oracle::random_plane(5, 5, 3)}, 4, 4);
  ro3::save_image(img, dir / "a.pgm");
  const auto back = ro3::load_image(dir / "a.pgm");
  EXPECT_EQ(back.width(), 4u);
  EXPECT_EQ(back.height(), 4u);
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(back.plane(0)(r, c), ro3::to_byte(img.plane(0)(r, c)));
  }
}

TEST(SaveImage, LoadSaveIsIdentityOnIntegerPlanes) {
  TempDir dir;
  for (std::size_t channels : {1u, 3u}) {
    std::vector<Plane> planes;
    for (std::size_t c = 0; c < channels; ++c) {
      auto p = oracle::random_plane(7, 5, 10 + c);
      for (auto& v : p.values()) v = std::floor(v);
      planes.push_back(p);
    }
    const ImageBuf img(planes);
    const auto path = dir / (channels == 1 ? "g.pgm" : "c.ppm");
    ro3::save_image(img, path);
    EXPECT_EQ(ro3::load_image(path), img);
#if defined(RO3_HAVE_LIBPNG)
    ro3::save_image(img, dir / "x.png");
    EXPECT_EQ(ro3::load_image(dir / "x.png"), img);
#endif
  }
}

TEST(SaveImage, ReportsIoErrors) {
  const ImageBuf img({Plane(2, 2, 1.0)});
  EXPECT_THROW(ro3::save_image(img, "/nonexistent-dir/x/y.pgm"), ro3::IoError);
  EXPECT_THROW(ro3::load_image("/nonexistent-dir/in.pgm"), ro3::IoError);
}

TEST(Padding, MirrorsBorderRowsAndColumns) {
  const ImageBuf img({Plane::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})});
  const auto padded = ro3::pad_to_multiple(img, 4);
  EXPECT_EQ(padded.plane(0),
            Plane::from_rows({{1, 2, 3, 3}, {4, 5, 6, 6}, {7, 8, 9, 9}, {7, 8, 9, 9}}));
  EXPECT_EQ(padded.orig_width(), 3u);
  EXPECT_EQ(padded.orig_height(), 3u);
}

TEST(Padding, LeavesAlignedImagesAlone) {
  const ImageBuf img({oracle::random_plane(4, 4, 1)});
  EXPECT_EQ(ro3::pad_to_multiple(img, 4), img);
}

TEST(Padding, ExtendsToNextMultiple) {
  const ImageBuf img({oracle::random_plane(5, 6, 2)});
  const auto padded = ro3::pad_to_multiple(img, 4);
  EXPECT_EQ(padded.width(), 8u);
  EXPECT_EQ(padded.height(), 8u);
  // Never touches the original extent.
  for (std::size_t r = 0; r < 6; ++r) {
    for (std::size_t c = 0; c < 5; ++c) EXPECT_EQ(padded.plane(0)(r, c), img.plane(0)(r, c));
  }
  // Reflection wraps for extensions longer than the source.
  const ImageBuf tiny({Plane::from_rows({{5}})});
  EXPECT_EQ(ro3::pad_to_multiple(tiny, 8).plane(0), Plane(8, 8, 5.0));
}

TEST(Noise, ZeroStdIsIdentityOrConstantShift) {
  const ImageBuf img({oracle::random_plane(8, 8, 4)});
  EXPECT_EQ(ro3::add_gaussian_noise(img, 0.0, 0.0, 1), img);
  const ImageBuf black({Plane(4, 4, 0.0)});
  const auto shifted = ro3::add_gaussian_noise(black, 0.5, 0.0, 1);
  for (double v : shifted.plane(0).values()) EXPECT_DOUBLE_EQ(v, 127.5);
}

TEST(Noise, MatchesConfiguredStandardDeviation) {
  const ImageBuf img({Plane(256, 256, 128.0)});
  const auto noisy = ro3::add_gaussian_noise(img, 0.0, 0.02, 42);
  double sum = 0.0;
  double sq = 0.0;
  const auto n = static_cast<double>(img.plane(0).size());
  for (std::size_t i = 0; i < img.plane(0).size(); ++i) {
    const double d = (noisy.plane(0).values()[i] - 128.0) / 255.0;
    sum += d;
    sq += d * d;
  }
  const double sd = std::sqrt((sq - sum * sum / n) / (n - 1));
  EXPECT_NEAR(sd, 0.02, 0.002);
}

TEST(Noise, IsDeterministicPerSeedAndRejectsNegativeStd) {
  const ImageBuf img({oracle::random_plane(16, 16, 5)});
  EXPECT_EQ(ro3::add_gaussian_noise(img, 0.0, 0.02, 9), ro3::add_gaussian_noise(img, 0.0, 0.02, 9));
  EXPECT_NE(ro3::add_gaussian_noise(img, 0.0, 0.02, 9), ro3::add_gaussian_noise(img, 0.0, 0.02, 10));
  EXPECT_THROW(ro3::add_gaussian_noise(img, 0.0, -0.1, 1), ro3::ArgumentError);
}

TEST(ImageBuf, EnforcesInvariants) {
  EXPECT_THROW(Plane(0, 3), ro3::ArgumentError);
  EXPECT_THROW(ImageBuf(std::vector<Plane>{}), ro3::ArgumentError);
  EXPECT_THROW(ImageBuf({Plane(2, 2), Plane(2, 3)}), ro3::ArgumentError);
  EXPECT_THROW(ImageBuf({Plane(2, 2), Plane(2, 2), Plane(2, 2), Plane(2, 2)}), ro3::ArgumentError);
  EXPECT_THROW(ImageBuf({Plane(2, 2)}, 3, 2), ro3::ArgumentError);
}
