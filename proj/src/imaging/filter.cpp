#include "sentinel/imaging/filter.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace sentinel::img {

ImageBuffer gaussian_blur(const ImageBuffer& src, double sigma) {
  if (sigma <= 0.0)
    throw std::invalid_argument("gaussian_blur: sigma must be positive");
  if (src.channels != 1)
    throw std::invalid_argument("gaussian_blur: 1-channel input required");

  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    sum += kernel[i + radius];
  }
  for (auto& k : kernel) k /= sum;

  const int w = src.width, h = src.height;
  std::vector<double> tmp(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i)
        acc += kernel[i + radius] * src.at(clamp_index(x + i, 0, w - 1), y);
      tmp[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  ImageBuffer out = ImageBuffer::make(w, h, 1);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i)
        acc += kernel[i + radius] *
               tmp[static_cast<std::size_t>(clamp_index(y + i, 0, h - 1)) * w +
                   x];
      out.at(x, y) = clamp_u8(acc);
    }
  }
  return out;
}

ImageBuffer clahe(const ImageBuffer& src, int tiles_x, int tiles_y,
                  double clip_limit) {
  if (src.channels != 1)
    throw std::invalid_argument("clahe: 1-channel input required");
  if (tiles_x < 1 || tiles_y < 1)
    throw std::invalid_argument("clahe: tile grid must be >= 1x1");
  if (tiles_x > src.width || tiles_y > src.height)
    throw std::invalid_argument("clahe: tile grid larger than image");
  if (clip_limit < 1.0)
    throw std::invalid_argument("clahe: clip_limit must be >= 1.0");

  const int w = src.width, h = src.height;
  std::vector<int> bx(tiles_x + 1), by(tiles_y + 1);
  for (int i = 0; i <= tiles_x; ++i)
    bx[i] = static_cast<int>(static_cast<long long>(i) * w / tiles_x);
  for (int j = 0; j <= tiles_y; ++j)
    by[j] = static_cast<int>(static_cast<long long>(j) * h / tiles_y);

  // Per-tile mapping v -> floor(255 * cdf(v)) over the clipped histogram.
  std::vector<std::vector<std::uint8_t>> maps(
      static_cast<std::size_t>(tiles_x) * tiles_y,
      std::vector<std::uint8_t>(256));
  std::vector<double> cx(tiles_x), cy(tiles_y);  // tile centers

  for (int ty = 0; ty < tiles_y; ++ty) {
    for (int tx = 0; tx < tiles_x; ++tx) {
      long long hist[256] = {};
      long long total = 0;
      for (int y = by[ty]; y < by[ty + 1]; ++y)
        for (int x = bx[tx]; x < bx[tx + 1]; ++x) {
          ++hist[src.at(x, y)];
          ++total;
        }

      long long limit = total;
      if (std::isfinite(clip_limit)) {
        double raw = clip_limit * static_cast<double>(total) / 256.0;
        if (raw < static_cast<double>(total))
          limit = std::max<long long>(1, static_cast<long long>(raw));
      }
      long long excess = 0;
      for (auto& bin : hist) {
        if (bin > limit) {
          excess += bin - limit;
          bin = limit;
        }
      }
      const long long add = excess / 256, rem = excess % 256;
      for (int v = 0; v < 256; ++v) hist[v] += add + (v < rem ? 1 : 0);

      auto& map = maps[static_cast<std::size_t>(ty) * tiles_x + tx];
      long long cdf = 0;
      for (int v = 0; v < 256; ++v) {
        cdf += hist[v];
        map[v] = static_cast<std::uint8_t>(255 * cdf / total);
      }
      cx[tx] = (bx[tx] + bx[tx + 1] - 1) / 2.0;
      cy[ty] = (by[ty] + by[ty + 1] - 1) / 2.0;
    }
  }

  // Bilinear blend of the four surrounding tile mappings, clamped at the
  // image margins where fewer neighbors exist.
  ImageBuffer out = ImageBuffer::make(w, h, 1);
  for (int y = 0; y < h; ++y) {
    int t0y = 0;
    while (t0y + 1 < tiles_y && cy[t0y + 1] <= y) ++t0y;
    int t1y = std::min(t0y + 1, tiles_y - 1);
    double fy = 0.0;
    if (t1y != t0y && y >= cy[t0y])
      fy = (y - cy[t0y]) / (cy[t1y] - cy[t0y]);
    else if (t0y > 0 && y < cy[t0y])
      fy = 0.0;  // above the first center row: clamp
    fy = std::min(1.0, std::max(0.0, fy));

    for (int x = 0; x < w; ++x) {
      int t0x = 0;
      while (t0x + 1 < tiles_x && cx[t0x + 1] <= x) ++t0x;
      int t1x = std::min(t0x + 1, tiles_x - 1);
      double fx = 0.0;
      if (t1x != t0x && x >= cx[t0x])
        fx = (x - cx[t0x]) / (cx[t1x] - cx[t0x]);
      fx = std::min(1.0, std::max(0.0, fx));

      const int v = src.at(x, y);
      const double m00 = maps[static_cast<std::size_t>(t0y) * tiles_x + t0x][v];
      const double m10 = maps[static_cast<std::size_t>(t0y) * tiles_x + t1x][v];
      const double m01 = maps[static_cast<std::size_t>(t1y) * tiles_x + t0x][v];
      const double m11 = maps[static_cast<std::size_t>(t1y) * tiles_x + t1x][v];
      const double blended = (1 - fy) * ((1 - fx) * m00 + fx * m10) +
                             fy * ((1 - fx) * m01 + fx * m11);
      out.at(x, y) = clamp_u8(blended);
    }
  }
  return out;
}

ImageBuffer resize_bilinear(const ImageBuffer& src, int out_w, int out_h) {
  if (out_w < 1 || out_h < 1)
    throw std::invalid_argument("resize_bilinear: bad output size");
  ImageBuffer out = ImageBuffer::make(out_w, out_h, src.channels);
  const double sx = static_cast<double>(src.width) / out_w;
  const double sy = static_cast<double>(src.height) / out_h;
  for (int y = 0; y < out_h; ++y) {
    const double fy = (y + 0.5) * sy - 0.5;
    int y0 = static_cast<int>(std::floor(fy));
    const double wy = fy - y0;
    int y1 = clamp_index(y0 + 1, 0, src.height - 1);
    y0 = clamp_index(y0, 0, src.height - 1);
    for (int x = 0; x < out_w; ++x) {
      const double fx = (x + 0.5) * sx - 0.5;
      int x0 = static_cast<int>(std::floor(fx));
      const double wx = fx - x0;
      int x1 = clamp_index(x0 + 1, 0, src.width - 1);
      x0 = clamp_index(x0, 0, src.width - 1);
      for (int c = 0; c < src.channels; ++c) {
        const double v = (1 - wy) * ((1 - wx) * src.at(x0, y0, c) +
                                     wx * src.at(x1, y0, c)) +
                         wy * ((1 - wx) * src.at(x0, y1, c) +
                               wx * src.at(x1, y1, c));
        out.at(x, y, c) = clamp_u8(v);
      }
    }
  }
  return out;
}

}  // namespace sentinel::img
