/// Bin occupancy from a single frame: find the rim ellipse on the blurred
/// saturation channel, then decide Full/Empty from interior heterogeneity
/// and rim-edge visibility.
#pragma once

#include <optional>

#include "sentinel/core/image.hpp"
#include "sentinel/imaging/ellipse.hpp"

namespace sentinel::bins {

/// Frame-space rectangle enclosing the bin opening. Must be at least
/// 32x32 px and lie inside the frame.
struct BinROI {
  img::Rect rect;
};

struct OccupancyParams {
  double interior_std_threshold = 38.0;  // S-channel units
  double rim_visibility_fraction = 0.6;
  // A unit step of height A blurred at sigma 1.4 peaks near 0.5*A, so 80
  // seeds on saturation steps of roughly 160 and above.
  double canny_low = 30.0;
  double canny_high = 80.0;
  double blur_sigma = 1.4;
};

enum class BinState { Full, Empty, Unknown };

const char* to_string(BinState s);

struct OccupancyVerdict {
  BinState state = BinState::Unknown;
  double interior_std = 0.0;
  double rim_fraction = 0.0;
  std::optional<img::Ellipse> ellipse;  // frame coordinates
};

/// Rim search: S channel of the ROI crop, Gaussian blur, Canny, Hough.
/// Returns the highest-scoring ellipse (score >= 0.5) with center in the
/// roi, in frame coordinates; absent when none qualifies. The Hough axis
/// range is derived from the roi (semi-axes between 10% of the short side
/// and 75% of the long side).
std::optional<img::Ellipse> detect_rim(const img::ImageBuffer& frame,
                                       const BinROI& roi,
                                       const OccupancyParams& params);

/// Population standard deviation of the blurred S channel over the pixels
/// strictly inside the ellipse after a 2 px erosion of that region.
/// Throws when the eroded interior is empty.
double interior_heterogeneity(const img::ImageBuffer& frame,
                              const img::Ellipse& ellipse,
                              const OccupancyParams& params);

/// Fraction of the expected upper half-perimeter actually present in
/// `edges`: the upper arc is rasterized, thickened by 1 px (band clipped
/// back to rows at or above the center), and edge pixels inside the band
/// are counted. Clamped to [0,1]. full_perimeter switches the expected set
/// to the whole rim for cameras that see both arcs.
double rim_occlusion(const img::BinaryMask& edges, const img::Ellipse& ellipse,
                     bool full_perimeter = false);

/// Two-part test: no rim -> Unknown; Full iff interior_std exceeds the
/// threshold or the rim fraction falls below rim_visibility_fraction;
/// otherwise Empty.
OccupancyVerdict classify(const img::ImageBuffer& frame, const BinROI& roi,
                          const OccupancyParams& params);

}  // namespace sentinel::bins
