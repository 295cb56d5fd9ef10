/// Smoothing, contrast enhancement and resampling on single-channel images.
/// Border handling is clamp-to-border throughout.
#pragma once

#include "sentinel/core/image.hpp"

namespace sentinel::img {

/// Separable Gaussian convolution, kernel radius = ceil(3*sigma).
/// Throws std::invalid_argument for sigma <= 0.
ImageBuffer gaussian_blur(const ImageBuffer& src, double sigma);

/// Contrast-limited adaptive histogram equalization.
///
/// The image is split into an nx-by-ny tile grid. Each tile's histogram is
/// clipped at clip_limit times the uniform bin height, the clipped excess is
/// redistributed uniformly, and the per-tile mapping is v -> floor(255 *
/// cdf(v)). Pixels are remapped by bilinear interpolation between the four
/// surrounding tile mappings. clip_limit >= 1; pass +infinity to disable
/// clipping. Throws if the tile grid is larger than the image.
ImageBuffer clahe(const ImageBuffer& src, int tiles_x, int tiles_y,
                  double clip_limit);

/// Bilinear resize (pixel-center aligned). Works for 1 or 3 channels.
ImageBuffer resize_bilinear(const ImageBuffer& src, int out_w, int out_h);

}  // namespace sentinel::img
