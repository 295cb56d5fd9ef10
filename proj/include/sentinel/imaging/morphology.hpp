#pragma once

#include "sentinel/core/image.hpp"

namespace sentinel::img {

/// Set dilation with a square structuring element of half-width `radius`.
/// radius 0 is the identity.
BinaryMask dilate(const BinaryMask& src, int radius);

/// Set erosion with the same square element. Pixels outside the image do not
/// contribute (border windows shrink).
BinaryMask erode(const BinaryMask& src, int radius);

/// Majority vote over the (2r+1)^2 window with clamp-to-border sampling.
/// Throws for radius < 1.
BinaryMask median_filter(const BinaryMask& src, int radius);

}  // namespace sentinel::img
