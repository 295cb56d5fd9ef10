#include "sentinel/imaging/morphology.hpp"

#include <stdexcept>
#include <vector>

namespace sentinel::img {

namespace {

// Separable pass for square structuring elements: horizontal then vertical
// running max (dilate) or min (erode). Out-of-range samples count as
// background for dilate and foreground for erode, matching a mask padded
// with zeros for dilation and ones for erosion.
BinaryMask sweep(const BinaryMask& src, int radius, bool dilate_mode) {
  const int w = src.width, h = src.height;
  BinaryMask mid = BinaryMask::make(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      bool v = dilate_mode ? false : true;
      for (int i = -radius; i <= radius; ++i) {
        const int xi = x + i;
        bool s;
        if (xi < 0 || xi >= w)
          s = dilate_mode ? false : true;
        else
          s = src.at(xi, y);
        if (dilate_mode)
          v = v || s;
        else
          v = v && s;
      }
      mid.set(x, y, v);
    }
  }
  BinaryMask out = BinaryMask::make(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      bool v = dilate_mode ? false : true;
      for (int i = -radius; i <= radius; ++i) {
        const int yi = y + i;
        bool s;
        if (yi < 0 || yi >= h)
          s = dilate_mode ? false : true;
        else
          s = mid.at(x, yi);
        if (dilate_mode)
          v = v || s;
        else
          v = v && s;
      }
      out.set(x, y, v);
    }
  }
  return out;
}

}  // namespace

BinaryMask dilate(const BinaryMask& src, int radius) {
  if (radius < 0) throw std::invalid_argument("dilate: negative radius");
  if (radius == 0) return src;
  return sweep(src, radius, true);
}

BinaryMask erode(const BinaryMask& src, int radius) {
  if (radius < 0) throw std::invalid_argument("erode: negative radius");
  if (radius == 0) return src;
  return sweep(src, radius, false);
}

BinaryMask median_filter(const BinaryMask& src, int radius) {
  if (radius < 1) throw std::invalid_argument("median_filter: radius must be >= 1");
  const int w = src.width, h = src.height;
  const int side = 2 * radius + 1;
  const int window = side * side;
  BinaryMask out = BinaryMask::make(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int count = 0;
      for (int dy = -radius; dy <= radius; ++dy) {
        const int yy = clamp_index(y + dy, 0, h - 1);
        for (int dx = -radius; dx <= radius; ++dx) {
          const int xx = clamp_index(x + dx, 0, w - 1);
          count += src.at(xx, yy) ? 1 : 0;
        }
      }
      out.set(x, y, 2 * count > window);
    }
  }
  return out;
}

}  // namespace sentinel::img
