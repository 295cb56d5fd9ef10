#include "sentinel/imaging/edge.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sentinel::img {

BinaryMask canny(const ImageBuffer& src, double low, double high) {
  if (src.channels != 1)
    throw std::invalid_argument("canny: 1-channel input required");
  if (low < 0 || high < low)
    throw std::invalid_argument("canny: need 0 <= low <= high");

  const int w = src.width, h = src.height;
  BinaryMask out = BinaryMask::make(w, h);

  const auto px = [&](int x, int y) -> double {
    return src.at(clamp_index(x, 0, w - 1), clamp_index(y, 0, h - 1));
  };

  // Sobel responses divided by 4 keep the magnitude on the same scale as
  // the input intensities, so the usual threshold ranges apply.
  std::vector<double> mag(static_cast<std::size_t>(w) * h, 0.0);
  std::vector<double> dir(static_cast<std::size_t>(w) * h, 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double gx = (px(x + 1, y - 1) + 2.0 * px(x + 1, y) +
                         px(x + 1, y + 1) - px(x - 1, y - 1) -
                         2.0 * px(x - 1, y) - px(x - 1, y + 1)) /
                        4.0;
      const double gy = (px(x - 1, y + 1) + 2.0 * px(x, y + 1) +
                         px(x + 1, y + 1) - px(x - 1, y - 1) -
                         2.0 * px(x, y - 1) - px(x + 1, y - 1)) /
                        4.0;
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      mag[i] = std::hypot(gx, gy);
      dir[i] = std::atan2(gy, gx);
    }
  }
  const auto mag_at = [&](int x, int y) -> double {
    return mag[static_cast<std::size_t>(clamp_index(y, 0, h - 1)) * w +
               clamp_index(x, 0, w - 1)];
  };

  // Non-maximum suppression along one of four quantized directions.
  // The asymmetric comparison (strict against the preceding neighbor,
  // non-strict against the following one) keeps plateau edges one pixel
  // wide with a deterministic side. Clamped lookups make a border pixel
  // compare against itself for directions leaving the image, which
  // suppresses it unless the edge runs along the border.
  constexpr double kPi = 3.14159265358979323846;
  std::vector<std::uint8_t> grade(static_cast<std::size_t>(w) * h, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      if (mag[i] < low) continue;
      double angle = dir[i];
      if (angle < 0) angle += kPi;
      int dx, dy;
      if (angle < kPi / 8 || angle >= 7 * kPi / 8) {
        dx = 1;
        dy = 0;
      } else if (angle < 3 * kPi / 8) {
        dx = 1;
        dy = 1;
      } else if (angle < 5 * kPi / 8) {
        dx = 0;
        dy = 1;
      } else {
        dx = -1;
        dy = 1;
      }
      const double before = mag_at(x - dx, y - dy);
      const double after = mag_at(x + dx, y + dy);
      if (mag[i] > before && mag[i] >= after)
        grade[i] = mag[i] >= high ? 2 : 1;
    }
  }

  // Hysteresis: strong pixels seed 8-connected growth through weak ones.
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (grade[static_cast<std::size_t>(y) * w + x] == 2 && !out.at(x, y)) {
        out.set(x, y, true);
        stack.emplace_back(x, y);
        while (!stack.empty()) {
          const auto [cx, cy] = stack.back();
          stack.pop_back();
          for (int ddy = -1; ddy <= 1; ++ddy)
            for (int ddx = -1; ddx <= 1; ++ddx) {
              const int nx = cx + ddx, ny = cy + ddy;
              if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
              if (out.at(nx, ny)) continue;
              if (grade[static_cast<std::size_t>(ny) * w + nx] == 0) continue;
              out.set(nx, ny, true);
              stack.emplace_back(nx, ny);
            }
        }
      }
  return out;
}

}  // namespace sentinel::img
