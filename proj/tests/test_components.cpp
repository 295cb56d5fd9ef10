#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "sentinel/core/hash.hpp"
#include "sentinel/imaging/components.hpp"

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

// Component pixel sets as sorted lists, independent of label numbering.
std::set<std::vector<int>> pixel_sets(const LabelMap& lm) {
  std::vector<std::vector<int>> sets(static_cast<std::size_t>(lm.component_count));
  for (int y = 0; y < lm.height; ++y)
    for (int x = 0; x < lm.width; ++x)
      if (lm.at(x, y) != 0)
        sets[static_cast<std::size_t>(lm.at(x, y) - 1)].push_back(y * lm.width + x);
  std::set<std::vector<int>> result;
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    result.insert(s);
  }
  return result;
}

}  // namespace

TEST_CASE("two disjoint squares give two components") {
  BinaryMask m = BinaryMask::make(20, 10);
  for (int y = 1; y <= 3; ++y)
    for (int x = 1; x <= 3; ++x) m.set(x, y, true);
  for (int y = 5; y <= 7; ++y)
    for (int x = 10; x <= 12; ++x) m.set(x, y, true);
  const LabelMap lm = connected_components(m, Connectivity::Eight);
  CHECK(lm.component_count == 2);
  // Raster order: the square whose first pixel comes first gets label 1.
  CHECK(lm.at(1, 1) == 1);
  CHECK(lm.at(10, 5) == 2);
}

TEST_CASE("diagonal touch merges at 8-connectivity only") {
  BinaryMask m = BinaryMask::make(4, 4);
  m.set(1, 1, true);
  m.set(2, 2, true);
  CHECK(connected_components(m, Connectivity::Four).component_count == 2);
  CHECK(connected_components(m, Connectivity::Eight).component_count == 1);
}

TEST_CASE("empty mask has zero components") {
  const BinaryMask m = BinaryMask::make(5, 5);
  const LabelMap lm = connected_components(m, Connectivity::Four);
  CHECK(lm.component_count == 0);
  for (auto l : lm.labels) CHECK(l == 0);
}

TEST_CASE("labels are dense and deterministic in raster order") {
  const BinaryMask m = noise_mask(31, 24, 17, 0.45);
  const LabelMap lm = connected_components(m, Connectivity::Eight);

  std::vector<bool> seen(static_cast<std::size_t>(lm.component_count) + 1, false);
  int next_expected = 1;
  for (int y = 0; y < m.height; ++y)
    for (int x = 0; x < m.width; ++x) {
      const int l = lm.at(x, y);
      CHECK(m.at(x, y) == (l != 0));
      if (l == 0) continue;
      REQUIRE(l >= 1);
      REQUIRE(l <= lm.component_count);
      if (!seen[static_cast<std::size_t>(l)]) {
        // A label's first raster appearance must be the next unseen label.
        CHECK(l == next_expected);
        ++next_expected;
        seen[static_cast<std::size_t>(l)] = true;
      }
    }
  CHECK(next_expected == lm.component_count + 1);
}

TEST_CASE("component pixel sets survive transposition") {
  const BinaryMask m = noise_mask(23, 18, 29, 0.4);
  BinaryMask t = BinaryMask::make(m.height, m.width);
  for (int y = 0; y < m.height; ++y)
    for (int x = 0; x < m.width; ++x) t.set(y, x, m.at(x, y));

  const LabelMap lm = connected_components(m, Connectivity::Eight);
  const LabelMap lt = connected_components(t, Connectivity::Eight);
  CHECK(lm.component_count == lt.component_count);

  // Transpose lt's pixel sets back into m's coordinates and compare.
  LabelMap back;
  back.width = m.width;
  back.height = m.height;
  back.component_count = lt.component_count;
  back.labels.assign(static_cast<std::size_t>(m.width) * m.height, 0);
  for (int y = 0; y < t.height; ++y)
    for (int x = 0; x < t.width; ++x)
      back.labels[static_cast<std::size_t>(x) * m.width + y] = lt.at(x, y);
  CHECK(pixel_sets(lm) == pixel_sets(back));
}

TEST_CASE("component_stats reports area, bounds and centroid") {
  BinaryMask m = BinaryMask::make(12, 8);
  for (int x = 2; x <= 5; ++x) m.set(x, 3, true);  // 4-wide bar
  m.set(9, 6, true);
  const LabelMap lm = connected_components(m, Connectivity::Four);
  const auto stats = component_stats(lm);
  REQUIRE(stats.size() == 2);
  CHECK(stats[0].area == 4);
  CHECK(stats[0].min_x == 2);
  CHECK(stats[0].max_x == 5);
  CHECK(stats[0].min_y == 3);
  CHECK(stats[0].max_y == 3);
  CHECK(stats[0].centroid_x == doctest::Approx(3.5));
  CHECK(stats[0].centroid_y == doctest::Approx(3.0));
  CHECK(stats[1].area == 1);
}

TEST_CASE("drop_small_components removes only sub-threshold blobs") {
  BinaryMask m = BinaryMask::make(16, 16);
  for (int y = 1; y <= 3; ++y)
    for (int x = 1; x <= 3; ++x) m.set(x, y, true);  // area 9
  m.set(10, 10, true);
  m.set(11, 10, true);  // area 2
  const BinaryMask out = drop_small_components(m, 4, Connectivity::Eight);
  CHECK(out.count() == 9);
  CHECK(out.at(2, 2));
  CHECK_FALSE(out.at(10, 10));
}
