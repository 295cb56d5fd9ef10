#pragma once

#include <vector>

#include "sentinel/core/image.hpp"

namespace sentinel::img {

enum class Connectivity { Four = 4, Eight = 8 };

/// Label connected foreground regions. Labels are dense in 1..count and
/// ordered by the raster position of each component's first pixel.
LabelMap connected_components(const BinaryMask& src, Connectivity conn);

struct ComponentStats {
  int label = 0;
  long area = 0;
  int min_x = 0, min_y = 0, max_x = 0, max_y = 0;  // inclusive bounds
  double centroid_x = 0.0, centroid_y = 0.0;
};

/// Per-component pixel statistics, indexed by label-1.
std::vector<ComponentStats> component_stats(const LabelMap& labels);

/// Remove components smaller than min_area pixels; returns the surviving mask.
BinaryMask drop_small_components(const BinaryMask& src, long min_area,
                                 Connectivity conn);

}  // namespace sentinel::img
