#include <algorithm>
#include <future>
#include <sstream>
#include <stdexcept>

#include "sentinel/core/error.hpp"
#include "sentinel/detect/detection.hpp"
#include "sentinel/imaging/filter.hpp"

namespace sentinel::detect {

double iou(const DetectionBox& a, const DetectionBox& b) {
  const double x0 = std::max(a.x, b.x);
  const double y0 = std::max(a.y, b.y);
  const double x1 = std::min(a.x + a.w, b.x + b.w);
  const double y1 = std::min(a.y + a.h, b.y + b.h);
  const double inter = std::max(0.0, x1 - x0) * std::max(0.0, y1 - y0);
  const double uni = a.w * a.h + b.w * b.h - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

namespace {

bool rank_before(const DetectionBox& a, const DetectionBox& b) {
  if (a.confidence != b.confidence) return a.confidence > b.confidence;
  if (a.x != b.x) return a.x < b.x;
  if (a.y != b.y) return a.y < b.y;
  if (a.w != b.w) return a.w < b.w;
  return a.h < b.h;
}

// Clamp a frame-space box to the frame; drops boxes that collapse.
void append_clamped(std::vector<DetectionBox>& out, DetectionBox box, int fw,
                    int fh) {
  const double x1 = std::min(box.x + box.w, static_cast<double>(fw));
  const double y1 = std::min(box.y + box.h, static_cast<double>(fh));
  box.x = std::max(box.x, 0.0);
  box.y = std::max(box.y, 0.0);
  box.w = x1 - box.x;
  box.h = y1 - box.y;
  if (box.w > 0.0 && box.h > 0.0) out.push_back(box);
}

}  // namespace

std::vector<DetectionBox> nms_merge(std::vector<DetectionBox> boxes,
                                    double merge_iou) {
  std::sort(boxes.begin(), boxes.end(), rank_before);
  std::vector<DetectionBox> kept;
  for (const auto& cand : boxes) {
    bool suppressed = false;
    for (const auto& k : kept)
      if (k.class_id == cand.class_id && iou(k, cand) >= merge_iou) {
        suppressed = true;
        break;
      }
    if (!suppressed) kept.push_back(cand);
  }
  return kept;
}

std::vector<DetectionBox> detect_sliced(const img::ImageBuffer& frame,
                                        Detector& detector,
                                        const TilePlan& plan, double merge_iou,
                                        bool merge) {
  if (merge_iou <= 0.0 || merge_iou >= 1.0)
    throw std::invalid_argument("detect_sliced: merge_iou must be in (0,1)");

  const std::size_t n = plan.tiles.size();
  std::vector<std::vector<DetectionBox>> per_tile(n);
  std::vector<std::string> failures;

  const auto run_tile = [&](std::size_t i) {
    return detector.detect(crop(frame, plan.tiles[i]));
  };

  if (detector.thread_safe() && n > 1) {
    std::vector<std::future<std::vector<DetectionBox>>> jobs;
    jobs.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      jobs.push_back(std::async(std::launch::async, run_tile, i));
    for (std::size_t i = 0; i < n; ++i) {
      try {
        per_tile[i] = jobs[i].get();
      } catch (const std::exception& e) {
        failures.push_back("tile " + std::to_string(i) + ": " + e.what());
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        per_tile[i] = run_tile(i);
      } catch (const std::exception& e) {
        failures.push_back("tile " + std::to_string(i) + ": " + e.what());
      }
    }
  }
  if (!failures.empty()) {
    std::ostringstream msg;
    msg << "detector failed on " << failures.size() << " tile(s):";
    for (const auto& f : failures) msg << "\n  " << f;
    throw Error(msg.str());
  }

  std::vector<DetectionBox> all;
  for (std::size_t i = 0; i < n; ++i) {
    const img::Rect& t = plan.tiles[i];
    for (DetectionBox box : per_tile[i]) {
      box.x += t.x;
      box.y += t.y;
      append_clamped(all, box, frame.width, frame.height);
    }
  }
  if (merge) return nms_merge(std::move(all), merge_iou);
  std::sort(all.begin(), all.end(), rank_before);
  return all;
}

std::vector<DetectionBox> detect_whole(const img::ImageBuffer& frame,
                                       Detector& detector) {
  const int native = detector.native_size();
  std::vector<DetectionBox> raw;
  double sx = 1.0, sy = 1.0;
  if (frame.width == native && frame.height == native) {
    raw = detector.detect(frame);
  } else {
    raw = detector.detect(img::resize_bilinear(frame, native, native));
    sx = static_cast<double>(frame.width) / native;
    sy = static_cast<double>(frame.height) / native;
  }
  std::vector<DetectionBox> out;
  for (DetectionBox box : raw) {
    box.x *= sx;
    box.w *= sx;
    box.y *= sy;
    box.h *= sy;
    append_clamped(out, box, frame.width, frame.height);
  }
  std::sort(out.begin(), out.end(), rank_before);
  return out;
}

}  // namespace sentinel::detect
