/// Detector-agnostic slicing-aided inference: tile planning, per-tile
/// detection with remapping, and order-normalized merge.
#pragma once

#include <memory>
#include <vector>

#include "sentinel/core/image.hpp"

namespace sentinel::detect {

/// Axis-aligned detection in frame coordinates.
struct DetectionBox {
  double x = 0.0, y = 0.0;
  double w = 0.0, h = 0.0;
  int class_id = 0;
  double confidence = 0.0;
};

/// Intersection-over-union of two boxes; 0 when either is empty.
double iou(const DetectionBox& a, const DetectionBox& b);

/// Square tiles covering a frame. Consecutive tiles along each axis overlap
/// by exactly `overlap` except the last, which is shifted flush with the
/// border. Tiles never exceed the frame.
struct TilePlan {
  int tile_size = 0;
  int overlap = 0;
  std::vector<img::Rect> tiles;
};

/// stride = tile_size - overlap; tiles per axis = ceil((dim - tile) / stride)
/// + 1, or 1 when the frame fits. Throws for overlap >= tile_size or
/// non-positive sizes.
TilePlan plan_tiles(int frame_w, int frame_h, int tile_size, int overlap);

/// Pluggable detector. Implementations must be deterministic: identical
/// pixel content yields identical detections. thread_safe() == true allows
/// the slicer to run tiles concurrently.
class Detector {
 public:
  virtual ~Detector() = default;
  virtual std::vector<DetectionBox> detect(const img::ImageBuffer& image) = 0;
  virtual int native_size() const = 0;
  virtual bool thread_safe() const { return false; }
};

/// Greedy class-wise non-maximum suppression at IoU >= merge_iou, keeping
/// the higher-confidence box. Candidates are ranked by descending
/// confidence with lexicographic (x, y, w, h) tie-break, which makes the
/// result independent of input order.
std::vector<DetectionBox> nms_merge(std::vector<DetectionBox> boxes,
                                    double merge_iou);

/// Run the detector on every tile, remap detections by tile offset, clamp
/// to the frame, then merge. merge=false skips suppression (the output is
/// still sorted). A detector failure on any tile aborts the frame; the
/// error message lists every failing tile.
std::vector<DetectionBox> detect_sliced(const img::ImageBuffer& frame,
                                        Detector& detector,
                                        const TilePlan& plan, double merge_iou,
                                        bool merge = true);

/// Resize the frame to the detector's native square input, detect, and map
/// boxes back through the inverse scale.
std::vector<DetectionBox> detect_whole(const img::ImageBuffer& frame,
                                       Detector& detector);

/// Copy a rectangular region (must lie inside the frame).
img::ImageBuffer crop(const img::ImageBuffer& frame, const img::Rect& r);

}  // namespace sentinel::detect
