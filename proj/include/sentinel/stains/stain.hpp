/// Water-stain segmentation: per-frame low-saturation blob extraction after
/// CLAHE lightness enhancement, plus the per-pixel persistence automaton
/// that separates standing stains from transient foreground.
#pragma once

#include <vector>

#include "sentinel/core/image.hpp"

namespace sentinel::stains {

struct StainParams {
  int thr_s = 60;               // S-channel threshold
  int thr_history = 15;         // frames a pixel may go unsegmented
  double clahe_clip = 2.0;
  int clahe_grid_x = 8;
  int clahe_grid_y = 8;
  int dilate_radius = 1;
  int median_radius = 2;
  long min_blob_area = 64;      // px^2
  bool select_low_saturation = true;  // false selects S > thr_s instead
};

/// Per-pixel persistence state for one camera stream. age counts frames a
/// pixel has been continuously active and feeds blob ages in the report.
struct StainState {
  int width = 0;
  int height = 0;
  std::vector<int> miss_count;  // consecutive frames not segmented
  img::BinaryMask active;
  std::vector<long> age;

  static StainState make(int w, int h);
};

struct StainBlob {
  int id = 0;
  long area = 0;
  double centroid_x = 0.0;
  double centroid_y = 0.0;
  img::Rect bbox;
  long age = 0;  // frames; a merged blob inherits its oldest constituent
};

/// Lightness-enhanced low-saturation segmentation: rgb_to_lab_l -> clahe ->
/// rescale RGB by the per-pixel lightness ratio (zero lightness keeps the
/// pixel) -> rgb_to_hsv -> threshold S -> dilate -> median -> drop blobs
/// under min_blob_area.
img::BinaryMask segment_frame(const img::ImageBuffer& frame,
                              const StainParams& params);

/// One automaton step. Segmented pixels become active with miss_count 0;
/// unsegmented pixels age their miss_count and are cleared once it reaches
/// thr_history.
StainState update_state(const StainState& state, const img::BinaryMask& mask,
                        const StainParams& params);

/// Connected components (8-way) of the active mask, ids in raster order of
/// first pixel.
std::vector<StainBlob> stain_report(const StainState& state);

}  // namespace sentinel::stains
