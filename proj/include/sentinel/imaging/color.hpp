/// Color conversions. Hue is scaled to [0,255] (not the OpenCV-style
/// [0,180]); saturation and value are likewise [0,255]. The lightness
/// conversion assumes sRGB input with a D65 white point and scales L* from
/// [0,100] to [0,255].
#pragma once

#include "sentinel/core/image.hpp"

namespace sentinel::img {

/// Hexcone RGB -> HSV, all channels in [0,255]. Achromatic pixels have S=0.
ImageBuffer rgb_to_hsv(const ImageBuffer& src);

/// CIELAB L* channel of an sRGB image, scaled to [0,255].
ImageBuffer rgb_to_lab_l(const ImageBuffer& src);

/// Extract one channel of an interleaved image.
ImageBuffer extract_channel(const ImageBuffer& src, int channel);

/// Rec.601 integer luma, for fiducial detection.
ImageBuffer rgb_to_gray(const ImageBuffer& src);

}  // namespace sentinel::img
