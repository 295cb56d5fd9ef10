#include "sentinel/stains/stain.hpp"

#include <algorithm>
#include <stdexcept>

#include "sentinel/core/error.hpp"
#include "sentinel/imaging/color.hpp"
#include "sentinel/imaging/components.hpp"
#include "sentinel/imaging/filter.hpp"
#include "sentinel/imaging/morphology.hpp"

namespace sentinel::stains {
namespace {

constexpr int kMissCap = 1 << 30;

void validate(const StainParams& p) {
  if (p.thr_s < 0 || p.thr_s > 255)
    throw std::invalid_argument("stains: thr_s outside [0,255]");
  if (p.thr_history < 1)
    throw std::invalid_argument("stains: thr_history must be >= 1");
  if (p.min_blob_area < 1)
    throw std::invalid_argument("stains: min_blob_area must be >= 1");
  if (p.dilate_radius < 0)
    throw std::invalid_argument("stains: dilate_radius must be >= 0");
  if (p.median_radius < 1)
    throw std::invalid_argument("stains: median_radius must be >= 1");
}

}  // namespace

StainState StainState::make(int w, int h) {
  if (w < 1 || h < 1) throw std::invalid_argument("StainState: bad shape");
  StainState s;
  s.width = w;
  s.height = h;
  s.miss_count.assign(static_cast<std::size_t>(w) * h, 0);
  s.active = img::BinaryMask::make(w, h);
  s.age.assign(static_cast<std::size_t>(w) * h, 0);
  return s;
}

img::BinaryMask segment_frame(const img::ImageBuffer& frame,
                              const StainParams& params) {
  validate(params);
  if (frame.channels != 3)
    throw std::invalid_argument("stains: RGB frame required");

  const img::ImageBuffer l = img::rgb_to_lab_l(frame);
  const img::ImageBuffer l_enh =
      img::clahe(l, params.clahe_grid_x, params.clahe_grid_y,
                 params.clahe_clip);

  img::ImageBuffer boosted = frame;
  for (int y = 0; y < frame.height; ++y)
    for (int x = 0; x < frame.width; ++x) {
      const int l0 = l.at(x, y);
      if (l0 == 0) continue;  // ratio undefined; keep the pixel
      const double k = static_cast<double>(l_enh.at(x, y)) / l0;
      for (int c = 0; c < 3; ++c)
        boosted.at(x, y, c) = img::clamp_u8(frame.at(x, y, c) * k);
    }

  const img::ImageBuffer s = img::extract_channel(img::rgb_to_hsv(boosted), 1);
  img::BinaryMask mask = img::BinaryMask::make(frame.width, frame.height);
  for (int y = 0; y < frame.height; ++y)
    for (int x = 0; x < frame.width; ++x) {
      const bool low = s.at(x, y) < params.thr_s;
      mask.set(x, y, params.select_low_saturation ? low : !low);
    }

  mask = img::dilate(mask, params.dilate_radius);
  mask = img::median_filter(mask, params.median_radius);
  return img::drop_small_components(mask, params.min_blob_area,
                                    img::Connectivity::Eight);
}

StainState update_state(const StainState& state, const img::BinaryMask& mask,
                        const StainParams& params) {
  validate(params);
  if (mask.width != state.width || mask.height != state.height)
    throw Error("stains: mask dimensions do not match state");

  StainState next = state;
  const std::size_t n = static_cast<std::size_t>(state.width) * state.height;
  for (std::size_t i = 0; i < n; ++i) {
    const bool was_active = state.active.bits[i] != 0;
    if (mask.bits[i]) {
      next.miss_count[i] = 0;
      next.active.bits[i] = 1;
      next.age[i] = was_active ? state.age[i] + 1 : 1;
    } else {
      next.miss_count[i] = std::min(state.miss_count[i] + 1, kMissCap);
      if (next.miss_count[i] >= params.thr_history) {
        next.active.bits[i] = 0;
        next.age[i] = 0;
      } else {
        next.age[i] = was_active ? state.age[i] + 1 : 0;
      }
    }
  }
  return next;
}

std::vector<StainBlob> stain_report(const StainState& state) {
  const img::LabelMap labels =
      img::connected_components(state.active, img::Connectivity::Eight);
  const auto stats = img::component_stats(labels);

  std::vector<StainBlob> blobs(stats.size());
  for (std::size_t i = 0; i < stats.size(); ++i) {
    blobs[i].id = stats[i].label;
    blobs[i].area = stats[i].area;
    blobs[i].centroid_x = stats[i].centroid_x;
    blobs[i].centroid_y = stats[i].centroid_y;
    blobs[i].bbox = {stats[i].min_x, stats[i].min_y,
                     stats[i].max_x - stats[i].min_x + 1,
                     stats[i].max_y - stats[i].min_y + 1};
  }
  for (int y = 0; y < state.height; ++y)
    for (int x = 0; x < state.width; ++x) {
      const int label = labels.at(x, y);
      if (label == 0) continue;
      auto& b = blobs[label - 1];
      b.age = std::max(b.age,
                       state.age[static_cast<std::size_t>(y) * state.width + x]);
    }
  return blobs;
}

}  // namespace sentinel::stains
