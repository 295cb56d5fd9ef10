#pragma once

#include "sentinel/core/image.hpp"

namespace sentinel::img {

/// Canny edge detector: 3x3 Sobel gradients (clamp-to-border, magnitude
/// normalized to pixel-value units), non-maximum suppression over 4
/// quantized directions, then double-threshold hysteresis with
/// 8-connectivity. Thresholds apply to the normalized magnitude. Adding a
/// constant to every pixel leaves the mask unchanged.
/// Throws if low > high or low < 0.
BinaryMask canny(const ImageBuffer& src, double low, double high);

}  // namespace sentinel::img
