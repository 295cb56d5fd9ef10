#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "sentinel/core/error.hpp"
#include "sentinel/core/image_io.hpp"

using namespace sentinel;
using namespace sentinel::img;

namespace {

const std::string kData = SENTINEL_TEST_DATA_DIR;

std::string tmp_path(const std::string& name) {
  return std::string("io_") + name;
}

std::string file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

// The fixture PNGs were produced by an unrelated encoder. Pixel (x, y) of
// the RGB pattern is ((x*7 + y*13) % 256, (x*31) % 256, (y*53) % 256); the
// gray pattern is (x*11 + y*29) % 256. Both are 37x23.
constexpr int kPatW = 37, kPatH = 23;

}  // namespace

TEST_CASE("read_png decodes an externally encoded RGB image") {
  const ImageBuffer img = read_png(kData + "/pattern_rgb.png");
  REQUIRE(img.width == kPatW);
  REQUIRE(img.height == kPatH);
  REQUIRE(img.channels == 3);
  for (int y = 0; y < kPatH; ++y)
    for (int x = 0; x < kPatW; ++x) {
      CHECK(img.at(x, y, 0) == (x * 7 + y * 13) % 256);
      CHECK(img.at(x, y, 1) == (x * 31) % 256);
      CHECK(img.at(x, y, 2) == (y * 53) % 256);
    }
}

TEST_CASE("read_png decodes an externally encoded gray image") {
  const ImageBuffer img = read_png(kData + "/pattern_gray.png");
  REQUIRE(img.width == kPatW);
  REQUIRE(img.height == kPatH);
  REQUIRE(img.channels == 1);
  for (int y = 0; y < kPatH; ++y)
    for (int x = 0; x < kPatW; ++x) CHECK(img.at(x, y) == (x * 11 + y * 29) % 256);
}

TEST_CASE("read_png strips the alpha channel") {
  const ImageBuffer rgb = read_png(kData + "/pattern_rgb.png");
  const ImageBuffer rgba = read_png(kData + "/pattern_rgba.png");
  REQUIRE(rgba.channels == 3);
  CHECK(rgba.data == rgb.data);
}

TEST_CASE("png round trip preserves every sample and is deterministic") {
  ImageBuffer img = ImageBuffer::make(61, 17, 3);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < 3; ++c)
        img.at(x, y, c) = static_cast<std::uint8_t>((x * 3 + y * 41 + c * 97) % 256);

  const std::string p1 = tmp_path("rt1.png"), p2 = tmp_path("rt2.png");
  write_png(p1, img);
  write_png(p2, img);
  CHECK(file_bytes(p1) == file_bytes(p2));

  const ImageBuffer back = read_png(p1);
  REQUIRE(back.same_shape(img));
  CHECK(back.data == img.data);
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("pnm round trip for gray and color") {
  ImageBuffer gray = ImageBuffer::make(13, 9, 1);
  ImageBuffer rgb = ImageBuffer::make(13, 9, 3);
  for (int y = 0; y < 9; ++y)
    for (int x = 0; x < 13; ++x) {
      gray.at(x, y) = static_cast<std::uint8_t>((x * y + 5) % 256);
      for (int c = 0; c < 3; ++c)
        rgb.at(x, y, c) = static_cast<std::uint8_t>((x + y * 13 + c) % 256);
    }
  write_pnm(tmp_path("g.pgm"), gray);
  write_pnm(tmp_path("c.ppm"), rgb);
  const ImageBuffer g2 = read_pnm(tmp_path("g.pgm"));
  const ImageBuffer c2 = read_pnm(tmp_path("c.ppm"));
  CHECK(g2.same_shape(gray));
  CHECK(g2.data == gray.data);
  CHECK(c2.same_shape(rgb));
  CHECK(c2.data == rgb.data);
  std::remove(tmp_path("g.pgm").c_str());
  std::remove(tmp_path("c.ppm").c_str());
}

TEST_CASE("mask pgm serialization uses {0,255} and round trips") {
  BinaryMask m = BinaryMask::make(11, 7);
  for (int y = 0; y < 7; ++y)
    for (int x = 0; x < 11; ++x) m.set(x, y, (x + y) % 3 == 0);
  const std::string p = tmp_path("m.pgm");
  write_mask_pgm(p, m);

  const ImageBuffer raw = read_pnm(p);
  for (std::size_t i = 0; i < raw.data.size(); ++i)
    CHECK((raw.data[i] == 0 || raw.data[i] == 255));

  const BinaryMask back = read_mask_pgm(p);
  REQUIRE(back.same_shape(m));
  CHECK(back.bits == m.bits);
  std::remove(p.c_str());
}

TEST_CASE("read_image dispatches on magic bytes, write_image on extension") {
  ImageBuffer img = ImageBuffer::make(5, 4, 3, 77);
  write_image(tmp_path("d.png"), img);
  write_image(tmp_path("d.ppm"), img);
  CHECK(read_image(tmp_path("d.png")).data == img.data);
  CHECK(read_image(tmp_path("d.ppm")).data == img.data);
  CHECK_THROWS_AS(write_image(tmp_path("d.bmp"), img), IoError);
  std::remove(tmp_path("d.png").c_str());
  std::remove(tmp_path("d.ppm").c_str());
}

TEST_CASE("missing file raises IoError") {
  CHECK_THROWS_AS(read_png("does_not_exist_0424.png"), IoError);
  CHECK_THROWS_AS(read_image("does_not_exist_0424.ppm"), IoError);
}
