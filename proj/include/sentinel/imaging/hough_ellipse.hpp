/// Randomized Hough ellipse detection: repeatedly sample 5 edge pixels, fit
/// a conic, keep real ellipses within the axis range, and score each
/// candidate by the fraction of its predicted perimeter pixels present in
/// the edge map (within a 1-pixel tolerance band). A full 5-D accumulator
/// would be intractable at frame scale; the fixed seed keeps runs
/// deterministic.
#pragma once

#include <cstdint>
#include <vector>

#include "sentinel/imaging/ellipse.hpp"

namespace sentinel::img {

struct HoughEllipseOptions {
  std::uint64_t seed = 1;
  int iterations = 2000;
  int top_k = 5;
  double min_score = 0.0;
  bool refine = true;  // least-squares refit over inlier edge pixels
};

struct ScoredEllipse {
  Ellipse ellipse;
  double score = 0.0;
};

/// Candidates sorted by descending score, at most top_k. An empty edge mask
/// inside the roi yields an empty list. axis range applies to both semi-axes;
/// axis_min must be >= 3.
std::vector<ScoredEllipse> hough_ellipse(const BinaryMask& edges,
                                         const Rect& roi, double axis_min,
                                         double axis_max,
                                         const HoughEllipseOptions& opts = {});

}  // namespace sentinel::img
