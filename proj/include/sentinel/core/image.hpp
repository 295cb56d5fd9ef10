/// Owned pixel rasters shared by every pipeline: 8-bit interleaved images,
/// per-pixel boolean masks, and dense component label maps.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sentinel::img {

/// Row-major, channel-interleaved 8-bit raster. channels is 1 (gray) or 3 (RGB).
struct ImageBuffer {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> data;

  static ImageBuffer make(int w, int h, int ch, std::uint8_t fill = 0) {
    if (w < 1 || h < 1 || (ch != 1 && ch != 3))
      throw std::invalid_argument("ImageBuffer: bad shape");
    ImageBuffer img;
    img.width = w;
    img.height = h;
    img.channels = ch;
    img.data.assign(static_cast<std::size_t>(w) * h * ch, fill);
    return img;
  }

  std::uint8_t& at(int x, int y, int c = 0) {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  std::uint8_t at(int x, int y, int c = 0) const {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }

  bool same_shape(const ImageBuffer& o) const {
    return width == o.width && height == o.height && channels == o.channels;
  }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * height;
  }
};

/// One boolean per pixel, byte-backed. Dimensions always mirror the image the
/// mask was derived from.
struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;  // 0 or 1

  static BinaryMask make(int w, int h, bool fill = false) {
    if (w < 1 || h < 1) throw std::invalid_argument("BinaryMask: bad shape");
    BinaryMask m;
    m.width = w;
    m.height = h;
    m.bits.assign(static_cast<std::size_t>(w) * h, fill ? 1 : 0);
    return m;
  }

  bool at(int x, int y) const {
    return bits[static_cast<std::size_t>(y) * width + x] != 0;
  }
  void set(int x, int y, bool v) {
    bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0;
  }

  long count() const {
    long n = 0;
    for (auto b : bits) n += b;
    return n;
  }
  bool same_shape(const BinaryMask& o) const {
    return width == o.width && height == o.height;
  }
};

/// Per-pixel component labels, 0 = background, 1..component_count dense.
struct LabelMap {
  int width = 0;
  int height = 0;
  std::vector<int> labels;
  int component_count = 0;

  int at(int x, int y) const {
    return labels[static_cast<std::size_t>(y) * width + x];
  }
};

/// Axis-aligned integer rectangle in pixel coordinates.
struct Rect {
  int x = 0, y = 0, w = 0, h = 0;

  bool contains(int px, int py) const {
    return px >= x && py >= y && px < x + w && py < y + h;
  }
  bool contains(double px, double py) const {
    return px >= x && py >= y && px < x + w && py < y + h;
  }
  bool inside(int frame_w, int frame_h) const {
    return x >= 0 && y >= 0 && w > 0 && h > 0 && x + w <= frame_w &&
           y + h <= frame_h;
  }
};

inline int clamp_index(int v, int lo, int hi) {
  return v < lo ? lo : (v > hi ? hi : v);
}

inline std::uint8_t clamp_u8(double v) {
  if (v <= 0.0) return 0;
  if (v >= 255.0) return 255;
  return static_cast<std::uint8_t>(v + 0.5);
}

}  // namespace sentinel::img
