#include <doctest.h>

#include <stdexcept>

#include "sentinel/core/hash.hpp"
#include "sentinel/imaging/edge.hpp"
#include "sentinel/imaging/morphology.hpp"

using namespace sentinel;
using namespace sentinel::img;

TEST_CASE("canny of a flat image is empty") {
  for (int level : {0, 128, 255}) {
    const ImageBuffer img =
        ImageBuffer::make(16, 12, 1, static_cast<std::uint8_t>(level));
    CHECK(canny(img, 40, 120).count() == 0);
  }
}

TEST_CASE("canny localizes a vertical step to one column") {
  ImageBuffer img = ImageBuffer::make(20, 14, 1);
  for (int y = 0; y < 14; ++y)
    for (int x = 0; x < 20; ++x) img.at(x, y) = x < 8 ? 0 : 255;
  const BinaryMask edges = canny(img, 40, 120);

  REQUIRE(edges.count() > 0);
  for (int y = 0; y < 14; ++y)
    for (int x = 0; x < 20; ++x)
      if (edges.at(x, y)) CHECK(x == 7);
  // Every row localizes the step.
  for (int y = 0; y < 14; ++y) CHECK(edges.at(7, y));
}

TEST_CASE("canny localizes a horizontal step to one row") {
  ImageBuffer img = ImageBuffer::make(14, 20, 1);
  for (int y = 0; y < 20; ++y)
    for (int x = 0; x < 14; ++x) img.at(x, y) = y < 9 ? 10 : 240;
  const BinaryMask edges = canny(img, 40, 120);
  REQUIRE(edges.count() > 0);
  for (int y = 0; y < 20; ++y)
    for (int x = 0; x < 14; ++x)
      if (edges.at(x, y)) CHECK(y == 8);
}

TEST_CASE("canny output feeds dilate with matching shape") {
  ImageBuffer img = ImageBuffer::make(10, 10, 1);
  img.at(5, 5) = 200;
  const BinaryMask edges = canny(img, 20, 60);
  const BinaryMask fat = dilate(edges, 1);
  CHECK(fat.width == img.width);
  CHECK(fat.height == img.height);
}

TEST_CASE("canny is invariant to a DC offset") {
  ImageBuffer img = ImageBuffer::make(27, 21, 1);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      img.at(x, y) = static_cast<std::uint8_t>(
          mix64(hash_combine(3, static_cast<std::uint64_t>(y) * 27 + x)) % 180);
  ImageBuffer shifted = img;
  for (auto& v : shifted.data) v = static_cast<std::uint8_t>(v + 60);

  CHECK(canny(img, 30, 90).bits == canny(shifted, 30, 90).bits);
}

TEST_CASE("canny hysteresis keeps weak pixels only when chained to strong") {
  // Ramp column values: a weak-gradient region isolated from any strong
  // pixel must not survive.
  ImageBuffer img = ImageBuffer::make(30, 8, 1);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 30; ++x) {
      int v = 0;
      if (x >= 10) v = 60;   // weak step of 60 at x=10
      if (x >= 20) v = 255;  // strong step of 195 at x=20
      img.at(x, y) = static_cast<std::uint8_t>(v);
    }
  const BinaryMask edges = canny(img, 40, 120);
  bool weak_col = false, strong_col = false;
  for (int y = 0; y < 8; ++y) {
    if (edges.at(9, y) || edges.at(10, y)) weak_col = true;
    if (edges.at(19, y)) strong_col = true;
  }
  CHECK_FALSE(weak_col);
  CHECK(strong_col);
}

TEST_CASE("canny rejects inverted thresholds") {
  const ImageBuffer img = ImageBuffer::make(8, 8, 1);
  CHECK_THROWS_AS(canny(img, 100, 50), std::invalid_argument);
  CHECK_THROWS_AS(canny(img, -1, 50), std::invalid_argument);
}
