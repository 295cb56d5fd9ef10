#include <stdexcept>

#include "sentinel/detect/detection.hpp"

namespace sentinel::detect {

namespace {

// Tile origins along one axis; the last origin is clamped so the tile ends
// flush with the border.
std::vector<int> axis_origins(int dim, int tile, int stride) {
  if (dim <= tile) return {0};
  const int n = (dim - tile + stride - 1) / stride + 1;
  std::vector<int> origins(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) origins[static_cast<std::size_t>(i)] = i * stride;
  origins.back() = dim - tile;
  return origins;
}

}  // namespace

TilePlan plan_tiles(int frame_w, int frame_h, int tile_size, int overlap) {
  if (frame_w < 1 || frame_h < 1)
    throw std::invalid_argument("plan_tiles: empty frame");
  if (tile_size < 1) throw std::invalid_argument("plan_tiles: bad tile size");
  if (overlap < 0 || overlap >= tile_size)
    throw std::invalid_argument("plan_tiles: overlap must be in [0, tile_size)");

  const int stride = tile_size - overlap;
  TilePlan plan;
  plan.tile_size = tile_size;
  plan.overlap = overlap;
  const int tw = std::min(tile_size, frame_w);
  const int th = std::min(tile_size, frame_h);
  for (int y0 : axis_origins(frame_h, tile_size, stride))
    for (int x0 : axis_origins(frame_w, tile_size, stride))
      plan.tiles.push_back({x0, y0, tw, th});
  return plan;
}

img::ImageBuffer crop(const img::ImageBuffer& frame, const img::Rect& r) {
  if (!r.inside(frame.width, frame.height))
    throw std::invalid_argument("crop: rect outside frame");
  img::ImageBuffer out = img::ImageBuffer::make(r.w, r.h, frame.channels);
  for (int y = 0; y < r.h; ++y)
    for (int x = 0; x < r.w; ++x)
      for (int c = 0; c < frame.channels; ++c)
        out.at(x, y, c) = frame.at(r.x + x, r.y + y, c);
  return out;
}

}  // namespace sentinel::detect
