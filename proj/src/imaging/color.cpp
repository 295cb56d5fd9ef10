#include "sentinel/imaging/color.hpp"

#include <cmath>
#include <stdexcept>

namespace sentinel::img {

namespace {

double srgb_to_linear(double v) {
  return (v <= 0.04045) ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

}  // namespace

ImageBuffer rgb_to_hsv(const ImageBuffer& src) {
  if (src.channels != 3)
    throw std::invalid_argument("rgb_to_hsv: 3-channel input required");
  ImageBuffer out = ImageBuffer::make(src.width, src.height, 3);
  const std::size_t n = src.pixel_count();
  for (std::size_t i = 0; i < n; ++i) {
    const int r = src.data[3 * i], g = src.data[3 * i + 1],
              b = src.data[3 * i + 2];
    const int vmax = std::max(r, std::max(g, b));
    const int vmin = std::min(r, std::min(g, b));
    const int delta = vmax - vmin;

    // Hexcone hue scaled to [0,255]: H = 85*sector + 85*t / (2*delta),
    // evaluated in integers so rounding is exact (half rounds up).
    int h = 0;
    if (delta > 0) {
      int t, sector;
      if (vmax == r) {
        t = g - b;
        sector = t < 0 ? 3 : 0;  // wrap negative reds past 360 degrees
      } else if (vmax == g) {
        t = b - r;
        sector = 1;
      } else {
        t = r - g;
        sector = 2;
      }
      const long long num = 85LL * t + 170LL * delta * sector;
      h = static_cast<int>((num + delta) / (2LL * delta));
    }
    const int s =
        (vmax == 0) ? 0
                    : static_cast<int>(std::lround(255.0 * delta / vmax));

    out.data[3 * i] = static_cast<std::uint8_t>(h);
    out.data[3 * i + 1] = static_cast<std::uint8_t>(s);
    out.data[3 * i + 2] = static_cast<std::uint8_t>(vmax);
  }
  return out;
}

ImageBuffer rgb_to_lab_l(const ImageBuffer& src) {
  if (src.channels != 3)
    throw std::invalid_argument("rgb_to_lab_l: 3-channel input required");
  // Y row of the sRGB -> XYZ (D65) matrix; Yn = 1.
  constexpr double wr = 0.2126729, wg = 0.7151522, wb = 0.0721750;
  constexpr double eps = 216.0 / 24389.0;   // (6/29)^3
  constexpr double kappa = 24389.0 / 27.0;  // (29/3)^3

  // The conversion is pointwise in (r,g,b); a per-channel linearization
  // table keeps it exact and fast.
  double lin[256];
  for (int v = 0; v < 256; ++v) lin[v] = srgb_to_linear(v / 255.0);

  ImageBuffer out = ImageBuffer::make(src.width, src.height, 1);
  const std::size_t n = src.pixel_count();
  for (std::size_t i = 0; i < n; ++i) {
    const double y = wr * lin[src.data[3 * i]] + wg * lin[src.data[3 * i + 1]] +
                     wb * lin[src.data[3 * i + 2]];
    const double lstar =
        (y > eps) ? 116.0 * std::cbrt(y) - 16.0 : kappa * y;
    out.data[i] = clamp_u8(lstar * 255.0 / 100.0);
  }
  return out;
}

ImageBuffer extract_channel(const ImageBuffer& src, int channel) {
  if (channel < 0 || channel >= src.channels)
    throw std::invalid_argument("extract_channel: index out of range");
  ImageBuffer out = ImageBuffer::make(src.width, src.height, 1);
  const std::size_t n = src.pixel_count();
  for (std::size_t i = 0; i < n; ++i)
    out.data[i] = src.data[i * src.channels + channel];
  return out;
}

ImageBuffer rgb_to_gray(const ImageBuffer& src) {
  if (src.channels != 3)
    throw std::invalid_argument("rgb_to_gray: 3-channel input required");
  ImageBuffer out = ImageBuffer::make(src.width, src.height, 1);
  const std::size_t n = src.pixel_count();
  for (std::size_t i = 0; i < n; ++i) {
    const int r = src.data[3 * i], g = src.data[3 * i + 1],
              b = src.data[3 * i + 2];
    out.data[i] = static_cast<std::uint8_t>((77 * r + 150 * g + 29 * b) >> 8);
  }
  return out;
}

}  // namespace sentinel::img
