#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sentinel/core/error.hpp"
#include "sentinel/imaging/components.hpp"
#include "sentinel/stains/stain.hpp"

using namespace sentinel;

namespace {

// Saturated floor texture; S stays far above the default threshold.
void paint_floor(img::ImageBuffer& im) {
  for (int y = 0; y < im.height; ++y)
    for (int x = 0; x < im.width; ++x) {
      const int r = 100 + (x * 7 + y * 13) % 40;
      im.at(x, y, 0) = static_cast<std::uint8_t>(r);
      im.at(x, y, 1) = static_cast<std::uint8_t>(r - 90);
      im.at(x, y, 2) = static_cast<std::uint8_t>(r - 90);
    }
}

// Glossy gray disc: zero saturation at any lightness.
void paint_patch(img::ImageBuffer& im, int cx, int cy, int radius) {
  for (int y = 0; y < im.height; ++y)
    for (int x = 0; x < im.width; ++x) {
      if ((x - cx) * (x - cx) + (y - cy) * (y - cy) > radius * radius)
        continue;
      const auto v = static_cast<std::uint8_t>(100 + (x + y) % 30);
      im.at(x, y, 0) = v;
      im.at(x, y, 1) = v;
      im.at(x, y, 2) = v;
    }
}

img::ImageBuffer puddle_frame() {
  auto im = img::ImageBuffer::make(128, 128, 3);
  paint_floor(im);
  paint_patch(im, 64, 64, 20);
  return im;
}

int blob_count(const img::BinaryMask& mask) {
  return img::connected_components(mask, img::Connectivity::Eight)
      .component_count;
}

}  // namespace

TEST_CASE("segment_frame isolates a glossy patch from a saturated floor") {
  const auto mask = stains::segment_frame(puddle_frame(), {});
  CHECK(blob_count(mask) == 1);
  for (int y = 0; y < 128; ++y)
    for (int x = 0; x < 128; ++x) {
      const double d = std::hypot(x - 64.0, y - 64.0);
      if (d <= 17.0) CHECK(mask.at(x, y));
      if (d >= 26.0) CHECK_FALSE(mask.at(x, y));
    }
}

TEST_CASE("segment_frame of a fully saturated frame is empty") {
  auto im = img::ImageBuffer::make(64, 64, 3);
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x) im.at(x, y, 0) = 255;
  CHECK(stains::segment_frame(im, {}).count() == 0);
}

TEST_CASE("segment_frame removes single-pixel speckles") {
  auto im = img::ImageBuffer::make(128, 128, 3);
  paint_floor(im);
  for (int i = 0; i < 30; ++i) {
    const int x = 10 + 20 * (i % 6), y = 10 + 20 * (i / 6);
    im.at(x, y, 0) = im.at(x, y, 1) = im.at(x, y, 2) = 120;
  }
  CHECK(stains::segment_frame(im, {}).count() == 0);
}

TEST_CASE("segment_frame is invariant to hue rotation") {
  const auto frame = puddle_frame();
  auto rotated = img::ImageBuffer::make(128, 128, 3);
  for (int y = 0; y < 128; ++y)
    for (int x = 0; x < 128; ++x) {
      rotated.at(x, y, 0) = frame.at(x, y, 2);
      rotated.at(x, y, 1) = frame.at(x, y, 0);
      rotated.at(x, y, 2) = frame.at(x, y, 1);
    }
  const auto a = stains::segment_frame(frame, {});
  const auto b = stains::segment_frame(rotated, {});
  CHECK(a.bits == b.bits);
}

TEST_CASE("segment_frame honours the reversed threshold direction") {
  stains::StainParams params;
  params.select_low_saturation = false;
  const auto mask = stains::segment_frame(puddle_frame(), params);
  CHECK(mask.at(4, 4));           // saturated floor selected
  CHECK_FALSE(mask.at(64, 64));   // glossy patch excluded
}

TEST_CASE("doubling min_blob_area never increases the blob count") {
  auto im = img::ImageBuffer::make(160, 160, 3);
  paint_floor(im);
  paint_patch(im, 20, 20, 3);
  paint_patch(im, 60, 30, 5);
  paint_patch(im, 110, 60, 9);
  paint_patch(im, 60, 110, 20);
  stains::StainParams params;
  int prev = 1 << 20;
  for (long area = 16; area <= 4096; area *= 2) {
    params.min_blob_area = area;
    const int n = blob_count(stains::segment_frame(im, params));
    CHECK(n <= prev);
    prev = n;
  }
}

TEST_CASE("segment_frame validates parameters") {
  const auto im = img::ImageBuffer::make(16, 16, 3);
  stains::StainParams params;
  params.thr_history = 0;
  CHECK_THROWS_AS(stains::segment_frame(im, params), std::invalid_argument);
  params = {};
  params.median_radius = 0;
  CHECK_THROWS_AS(stains::segment_frame(im, params), std::invalid_argument);
  params = {};
  params.thr_s = 300;
  CHECK_THROWS_AS(stains::segment_frame(im, params), std::invalid_argument);
  CHECK_THROWS_AS(
      stains::segment_frame(img::ImageBuffer::make(8, 8, 1), {}),
      std::invalid_argument);
}

TEST_CASE("update_state trace: three segmented frames, history five") {
  stains::StainParams params;
  params.thr_history = 5;
  auto state = stains::StainState::make(2, 2);
  auto on = img::BinaryMask::make(2, 2);
  on.set(0, 0, true);
  const auto off = img::BinaryMask::make(2, 2);

  for (int frame = 1; frame <= 10; ++frame) {
    state = stains::update_state(state, frame <= 3 ? on : off, params);
    const bool expect_active = frame <= 7;
    CHECK(state.active.at(0, 0) == expect_active);
    CHECK(state.age[0] == (expect_active ? frame : 0));
    CHECK_FALSE(state.active.at(1, 1));
  }
}

TEST_CASE("thr_history one degenerates to the current mask") {
  stains::StainParams params;
  params.thr_history = 1;
  auto state = stains::StainState::make(8, 8);
  std::mt19937 rng(11);
  std::bernoulli_distribution bit(0.4);
  for (int frame = 0; frame < 20; ++frame) {
    auto mask = img::BinaryMask::make(8, 8);
    for (auto& b : mask.bits) b = bit(rng) ? 1 : 0;
    state = stains::update_state(state, mask, params);
    CHECK(state.active.bits == mask.bits);
  }
}

TEST_CASE("never-segmented pixels never activate") {
  auto state = stains::StainState::make(4, 4);
  const auto off = img::BinaryMask::make(4, 4);
  for (int frame = 0; frame < 10; ++frame) {
    state = stains::update_state(state, off, {});
    CHECK(state.active.count() == 0);
  }
}

TEST_CASE("automaton matches the history-scan oracle on all 8-bit traces") {
  // active(t) iff the pixel was segmented within the last thr frames; age
  // is the length of the current active run.
  for (int thr = 1; thr <= 4; ++thr) {
    stains::StainParams params;
    params.thr_history = thr;
    for (int bits = 0; bits < 256; ++bits) {
      auto state = stains::StainState::make(1, 1);
      int expected_age = 0;
      for (int t = 0; t < 8; ++t) {
        auto mask = img::BinaryMask::make(1, 1);
        mask.set(0, 0, (bits >> t) & 1);
        state = stains::update_state(state, mask, params);

        bool oracle = false;
        for (int s = std::max(0, t - thr + 1); s <= t; ++s)
          oracle = oracle || ((bits >> s) & 1);
        expected_age = oracle ? expected_age + 1 : 0;

        REQUIRE(state.active.at(0, 0) == oracle);
        REQUIRE(state.age[0] == expected_age);
        REQUIRE((!state.active.at(0, 0) || state.miss_count[0] < thr));
      }
    }
  }
}

TEST_CASE("active set equals the union of the trailing mask window") {
  stains::StainParams params;
  params.thr_history = 4;
  auto state = stains::StainState::make(16, 16);
  std::mt19937 rng(5);
  std::bernoulli_distribution bit(0.2);
  std::vector<img::BinaryMask> history;
  for (int frame = 0; frame < 30; ++frame) {
    auto mask = img::BinaryMask::make(16, 16);
    for (auto& b : mask.bits) b = bit(rng) ? 1 : 0;
    history.push_back(mask);
    state = stains::update_state(state, mask, params);
    for (int i = 0; i < 256; ++i) {
      bool in_window = false;
      for (int s = std::max(0, frame - params.thr_history + 1); s <= frame;
           ++s)
        in_window = in_window || history[s].bits[i] != 0;
      REQUIRE(state.active.bits[i] == (in_window ? 1 : 0));
    }
  }
}

TEST_CASE("update_state rejects mismatched dimensions") {
  const auto state = stains::StainState::make(4, 4);
  CHECK_THROWS_AS(
      stains::update_state(state, img::BinaryMask::make(4, 5), {}), Error);
}

TEST_CASE("stain_report on an empty state is empty") {
  CHECK(stains::stain_report(stains::StainState::make(8, 8)).empty());
}

TEST_CASE("stain_report describes a block") {
  auto state = stains::StainState::make(24, 24);
  auto mask = img::BinaryMask::make(24, 24);
  for (int y = 6; y < 16; ++y)
    for (int x = 4; x < 14; ++x) mask.set(x, y, true);
  for (int i = 0; i < 5; ++i) state = stains::update_state(state, mask, {});

  const auto blobs = stains::stain_report(state);
  REQUIRE(blobs.size() == 1);
  CHECK(blobs[0].area == 100);
  CHECK(blobs[0].centroid_x == 8.5);
  CHECK(blobs[0].centroid_y == 10.5);
  CHECK(blobs[0].bbox.x == 4);
  CHECK(blobs[0].bbox.y == 6);
  CHECK(blobs[0].bbox.w == 10);
  CHECK(blobs[0].bbox.h == 10);
  CHECK(blobs[0].age == 5);
}

TEST_CASE("merged blobs inherit the oldest constituent age") {
  auto state = stains::StainState::make(24, 12);
  auto block = [](int x0, int x1) {
    auto m = img::BinaryMask::make(24, 12);
    for (int y = 2; y < 8; ++y)
      for (int x = x0; x < x1; ++x) m.set(x, y, true);
    return m;
  };
  const auto a = block(2, 8);
  auto ab = block(2, 8);
  for (int y = 2; y < 8; ++y)
    for (int x = 12; x < 18; ++x) ab.set(x, y, true);
  auto bridged = ab;
  for (int y = 4; y < 6; ++y)
    for (int x = 8; x < 12; ++x) bridged.set(x, y, true);

  stains::StainParams params;
  for (int frame = 1; frame <= 7; ++frame) {
    const auto& mask = frame < 3 ? a : (frame < 7 ? ab : bridged);
    state = stains::update_state(state, mask, params);
  }
  const auto merged = stains::stain_report(state);
  REQUIRE(merged.size() == 1);
  CHECK(merged[0].age == 7);
  CHECK(merged[0].area == 36 + 36 + 8);
}

TEST_CASE("segment_frame is deterministic") {
  const auto frame = puddle_frame();
  CHECK(stains::segment_frame(frame, {}).bits ==
        stains::segment_frame(frame, {}).bits);
}
