#include "sentinel/imaging/components.hpp"

#include <queue>
#include <stdexcept>

namespace sentinel::img {

LabelMap connected_components(const BinaryMask& mask, Connectivity conn) {
  const int w = mask.width, h = mask.height;
  LabelMap lm;
  lm.width = w;
  lm.height = h;
  lm.labels.assign(static_cast<std::size_t>(w) * h, 0);
  lm.component_count = 0;

  static const int dx8[] = {-1, 0, 1, -1, 1, -1, 0, 1};
  static const int dy8[] = {-1, -1, -1, 0, 0, 1, 1, 1};
  static const int dx4[] = {0, -1, 1, 0};
  static const int dy4[] = {-1, 0, 0, 1};
  const int* dx = conn == Connectivity::Eight ? dx8 : dx4;
  const int* dy = conn == Connectivity::Eight ? dy8 : dy4;
  const int ndirs = conn == Connectivity::Eight ? 8 : 4;

  std::queue<std::pair<int, int>> frontier;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.at(x, y) || lm.at(x, y) != 0) continue;
      const int label = ++lm.component_count;
      lm.labels[static_cast<std::size_t>(y) * w + x] = label;
      frontier.emplace(x, y);
      while (!frontier.empty()) {
        const auto [px, py] = frontier.front();
        frontier.pop();
        for (int d = 0; d < ndirs; ++d) {
          const int nx = px + dx[d], ny = py + dy[d];
          if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
          if (!mask.at(nx, ny)) continue;
          auto& slot = lm.labels[static_cast<std::size_t>(ny) * w + nx];
          if (slot != 0) continue;
          slot = label;
          frontier.emplace(nx, ny);
        }
      }
    }
  }
  return lm;
}

std::vector<ComponentStats> component_stats(const LabelMap& lm) {
  std::vector<ComponentStats> stats(lm.component_count);
  for (int i = 0; i < lm.component_count; ++i) {
    stats[i].label = i + 1;
    stats[i].min_x = lm.width;
    stats[i].min_y = lm.height;
    stats[i].max_x = -1;
    stats[i].max_y = -1;
  }
  for (int y = 0; y < lm.height; ++y) {
    for (int x = 0; x < lm.width; ++x) {
      const int label = lm.at(x, y);
      if (label == 0) continue;
      auto& s = stats[label - 1];
      ++s.area;
      s.min_x = std::min(s.min_x, x);
      s.min_y = std::min(s.min_y, y);
      s.max_x = std::max(s.max_x, x);
      s.max_y = std::max(s.max_y, y);
      s.centroid_x += x;
      s.centroid_y += y;
    }
  }
  for (auto& s : stats) {
    if (s.area > 0) {
      s.centroid_x /= s.area;
      s.centroid_y /= s.area;
    }
  }
  return stats;
}

BinaryMask drop_small_components(const BinaryMask& mask, long min_area,
                                 Connectivity conn) {
  if (min_area <= 1) return mask;
  const LabelMap lm = connected_components(mask, conn);
  const auto stats = component_stats(lm);
  BinaryMask out = BinaryMask::make(mask.width, mask.height);
  for (int y = 0; y < mask.height; ++y)
    for (int x = 0; x < mask.width; ++x) {
      const int label = lm.at(x, y);
      if (label != 0 && stats[label - 1].area >= min_area) out.set(x, y, true);
    }
  return out;
}

}  // namespace sentinel::img
