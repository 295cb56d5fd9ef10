#include "sentinel/bins/occupancy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sentinel/core/error.hpp"
#include "sentinel/imaging/color.hpp"
#include "sentinel/imaging/edge.hpp"
#include "sentinel/imaging/filter.hpp"
#include "sentinel/imaging/hough_ellipse.hpp"
#include "sentinel/imaging/morphology.hpp"

namespace sentinel::bins {
namespace {

constexpr double kMinRimScore = 0.5;

void validate_roi(const img::ImageBuffer& frame, const BinROI& roi) {
  if (!roi.rect.inside(frame.width, frame.height))
    throw std::invalid_argument("bins: roi outside frame");
  if (roi.rect.w < 32 || roi.rect.h < 32)
    throw std::invalid_argument("bins: roi smaller than 32x32");
}

img::ImageBuffer crop_rgb(const img::ImageBuffer& frame, const img::Rect& r) {
  img::ImageBuffer out = img::ImageBuffer::make(r.w, r.h, frame.channels);
  for (int y = 0; y < r.h; ++y)
    for (int x = 0; x < r.w; ++x)
      for (int c = 0; c < frame.channels; ++c)
        out.at(x, y, c) = frame.at(r.x + x, r.y + y, c);
  return out;
}

/// Blurred saturation channel, the working image for both the rim search
/// and the interior statistic.
img::ImageBuffer blurred_saturation(const img::ImageBuffer& rgb,
                                    const OccupancyParams& params) {
  const img::ImageBuffer hsv = img::rgb_to_hsv(rgb);
  return img::gaussian_blur(img::extract_channel(hsv, 1), params.blur_sigma);
}

img::BinaryMask rim_edges(const img::ImageBuffer& rgb,
                          const OccupancyParams& params) {
  return img::canny(blurred_saturation(rgb, params), params.canny_low,
                    params.canny_high);
}

std::optional<img::Ellipse> best_rim_in_crop(const img::BinaryMask& edges,
                                             const img::Rect& crop_rect) {
  img::HoughEllipseOptions opts;
  opts.min_score = kMinRimScore;
  opts.top_k = 1;
  const double short_side = std::min(crop_rect.w, crop_rect.h);
  const double long_side = std::max(crop_rect.w, crop_rect.h);
  const double axis_min = std::max(3.0, 0.1 * short_side);
  const double axis_max = 0.75 * long_side;
  const img::Rect local{0, 0, crop_rect.w, crop_rect.h};
  auto found = img::hough_ellipse(edges, local, axis_min, axis_max, opts);
  if (found.empty()) return std::nullopt;
  return found.front().ellipse;
}

}  // namespace

const char* to_string(BinState s) {
  switch (s) {
    case BinState::Full: return "Full";
    case BinState::Empty: return "Empty";
    default: return "Unknown";
  }
}

std::optional<img::Ellipse> detect_rim(const img::ImageBuffer& frame,
                                       const BinROI& roi,
                                       const OccupancyParams& params) {
  validate_roi(frame, roi);
  const img::ImageBuffer sub = crop_rgb(frame, roi.rect);
  auto best = best_rim_in_crop(rim_edges(sub, params), roi.rect);
  if (!best) return std::nullopt;
  best->cx += roi.rect.x;
  best->cy += roi.rect.y;
  return best;
}

double interior_heterogeneity(const img::ImageBuffer& frame,
                              const img::Ellipse& ellipse,
                              const OccupancyParams& params) {
  const img::ImageBuffer s = blurred_saturation(frame, params);

  img::BinaryMask interior = img::BinaryMask::make(s.width, s.height);
  const int x0 = img::clamp_index(static_cast<int>(ellipse.cx - ellipse.a), 0,
                                  s.width - 1);
  const int x1 = img::clamp_index(static_cast<int>(ellipse.cx + ellipse.a) + 1,
                                  0, s.width - 1);
  const int y0 = img::clamp_index(static_cast<int>(ellipse.cy - ellipse.a), 0,
                                  s.height - 1);
  const int y1 = img::clamp_index(static_cast<int>(ellipse.cy + ellipse.a) + 1,
                                  0, s.height - 1);
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x)
      if (ellipse.contains(x, y)) interior.set(x, y, true);
  interior = img::erode(interior, 2);

  double sum = 0.0, sum_sq = 0.0;
  long n = 0;
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) {
      if (!interior.at(x, y)) continue;
      const double v = s.at(x, y);
      sum += v;
      sum_sq += v * v;
      ++n;
    }
  if (n == 0) throw Error("bins: eroded rim interior is empty");
  const double mean = sum / n;
  return std::sqrt(std::max(0.0, sum_sq / n - mean * mean));
}

double rim_occlusion(const img::BinaryMask& edges, const img::Ellipse& ellipse,
                     bool full_perimeter) {
  long expected = 0;
  img::BinaryMask arc = img::BinaryMask::make(edges.width, edges.height);
  for (const auto& [px, py] : img::raster_perimeter(ellipse)) {
    if (!full_perimeter && py >= ellipse.cy) continue;
    ++expected;
    if (px >= 0 && py >= 0 && px < edges.width && py < edges.height)
      arc.set(px, py, true);
  }
  if (expected == 0) return 0.0;

  // The dilation must not leak onto the lower arc where the two arcs meet,
  // so the half-perimeter band is clipped back to rows at or above the
  // center.
  img::BinaryMask band = img::dilate(arc, 1);
  long visible = 0;
  for (int y = 0; y < edges.height; ++y) {
    if (!full_perimeter && y > ellipse.cy) break;
    for (int x = 0; x < edges.width; ++x)
      if (band.at(x, y) && edges.at(x, y)) ++visible;
  }
  return std::min(1.0, static_cast<double>(visible) / expected);
}

OccupancyVerdict classify(const img::ImageBuffer& frame, const BinROI& roi,
                          const OccupancyParams& params) {
  validate_roi(frame, roi);
  const img::ImageBuffer sub = crop_rgb(frame, roi.rect);
  const img::BinaryMask edges = rim_edges(sub, params);

  OccupancyVerdict verdict;
  auto rim = best_rim_in_crop(edges, roi.rect);
  if (!rim) return verdict;  // Unknown

  verdict.rim_fraction = rim_occlusion(edges, *rim);

  img::Ellipse frame_rim = *rim;
  frame_rim.cx += roi.rect.x;
  frame_rim.cy += roi.rect.y;
  verdict.ellipse = frame_rim;
  verdict.interior_std = interior_heterogeneity(frame, frame_rim, params);

  const bool full = verdict.interior_std > params.interior_std_threshold ||
                    verdict.rim_fraction < params.rim_visibility_fraction;
  verdict.state = full ? BinState::Full : BinState::Empty;
  return verdict;
}

}  // namespace sentinel::bins
