#include <doctest.h>

#include <stdexcept>

#include "sentinel/core/hash.hpp"
#include "sentinel/imaging/morphology.hpp"

using namespace sentinel;
using namespace sentinel::img;

namespace {

BinaryMask noise_mask(int w, int h, std::uint64_t seed, double density) {
  BinaryMask m = BinaryMask::make(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      m.set(x, y,
            hash_unit(mix64(hash_combine(
                seed, static_cast<std::uint64_t>(y) * w + x))) < density);
  return m;
}

bool subset(const BinaryMask& a, const BinaryMask& b) {
  for (int y = 0; y < a.height; ++y)
    for (int x = 0; x < a.width; ++x)
      if (a.at(x, y) && !b.at(x, y)) return false;
  return true;
}

}  // namespace

TEST_CASE("dilate radius 0 is the identity") {
  const BinaryMask m = noise_mask(17, 13, 1, 0.3);
  CHECK(dilate(m, 0).bits == m.bits);
  CHECK(erode(m, 0).bits == m.bits);
}

TEST_CASE("dilate grows a single pixel into a square block") {
  BinaryMask m = BinaryMask::make(9, 9);
  m.set(4, 4, true);
  const BinaryMask out = dilate(m, 1);
  CHECK(out.count() == 9);
  for (int y = 3; y <= 5; ++y)
    for (int x = 3; x <= 5; ++x) CHECK(out.at(x, y));
}

TEST_CASE("dilate is monotone over mask inclusion") {
  const BinaryMask b = noise_mask(25, 19, 7, 0.4);
  BinaryMask a = b;
  for (int y = 0; y < b.height; ++y)
    for (int x = 0; x < b.width; ++x)
      if ((x * 3 + y) % 4 == 0) a.set(x, y, false);
  REQUIRE(subset(a, b));
  CHECK(subset(dilate(a, 2), dilate(b, 2)));
}

TEST_CASE("dilation composes over radii") {
  const BinaryMask m = noise_mask(30, 22, 42, 0.2);
  CHECK(dilate(m, 3).bits == dilate(dilate(m, 1), 2).bits);
  CHECK(erode(m, 2).bits == erode(erode(m, 1), 1).bits);
}

TEST_CASE("erode is dual to dilate under complement") {
  const BinaryMask m = noise_mask(21, 16, 9, 0.5);
  BinaryMask inv = m;
  for (auto& b : inv.bits) b = b ? 0 : 1;
  BinaryMask lhs = erode(m, 1);
  BinaryMask rhs = dilate(inv, 1);
  for (auto& b : rhs.bits) b = b ? 0 : 1;
  CHECK(lhs.bits == rhs.bits);
}

TEST_CASE("median_filter removes isolated pixels and keeps solids") {
  BinaryMask m = BinaryMask::make(15, 15);
  m.set(7, 7, true);
  CHECK(median_filter(m, 1).count() == 0);

  BinaryMask full = BinaryMask::make(6, 5, true);
  CHECK(median_filter(full, 1).bits == full.bits);
}

TEST_CASE("median_filter on a 5x5 square erodes only the corners") {
  BinaryMask m = BinaryMask::make(11, 11);
  for (int y = 3; y <= 7; ++y)
    for (int x = 3; x <= 7; ++x) m.set(x, y, true);
  const BinaryMask out = median_filter(m, 1);

  // Corner windows cover 4 of 9 pixels (minority); edge centers cover 6.
  CHECK_FALSE(out.at(3, 3));
  CHECK_FALSE(out.at(7, 3));
  CHECK_FALSE(out.at(3, 7));
  CHECK_FALSE(out.at(7, 7));
  for (int y = 4; y <= 6; ++y)
    for (int x = 4; x <= 6; ++x) CHECK(out.at(x, y));
  CHECK(out.at(5, 3));
  CHECK(out.at(3, 5));
  CHECK(out.count() == 25 - 4);
}

TEST_CASE("median_filter rejects radius below 1") {
  const BinaryMask m = BinaryMask::make(3, 3);
  CHECK_THROWS_AS(median_filter(m, 0), std::invalid_argument);
}
