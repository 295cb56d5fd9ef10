/// Image file I/O: PNG (8-bit gray/RGB, non-interlaced) and binary PPM/PGM.
/// Masks are serialized as PGM with values {0, 255}. The PNG codec sits on
/// zlib directly; all writers are deterministic byte-for-byte.
#pragma once

#include <string>

#include "sentinel/core/image.hpp"

namespace sentinel::img {

ImageBuffer read_png(const std::string& path);
void write_png(const std::string& path, const ImageBuffer& img);

ImageBuffer read_pnm(const std::string& path);  // P5 (gray) or P6 (RGB)
void write_pnm(const std::string& path, const ImageBuffer& img);

/// Dispatch on magic bytes (PNG signature vs PNM header).
ImageBuffer read_image(const std::string& path);
/// Dispatch on extension: .png, .ppm, .pgm.
void write_image(const std::string& path, const ImageBuffer& img);

BinaryMask read_mask_pgm(const std::string& path);
void write_mask_pgm(const std::string& path, const BinaryMask& mask);

}  // namespace sentinel::img
