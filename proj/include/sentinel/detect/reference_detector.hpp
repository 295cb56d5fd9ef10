/// Deterministic stand-in for a trained network: finds saturated color
/// blobs by HSV thresholding and connected components. Exists so the
/// slicing machinery can be exercised and benchmarked without any weights.
#pragma once

#include <string>
#include <vector>

#include "sentinel/detect/detection.hpp"

namespace sentinel::detect {

/// One detectable blob class: a hue window (circular, in the [0,255] hue
/// scale) plus saturation/value floors.
struct BlobClass {
  int id = 0;
  std::string name;
  int hue_center = 0;
  int hue_tol = 12;
  int s_min = 120;
  int v_min = 60;
  long min_area = 4;
};

class ReferenceDetector : public Detector {
 public:
  explicit ReferenceDetector(std::vector<BlobClass> classes,
                             int native_size = 640);

  /// Parse a JSON manifest: {"classes":[{"id","name","hue_center",
  /// "hue_tol","s_min","v_min","min_area"}], "native_size"}. Missing
  /// per-class fields take the BlobClass defaults. Throws ConfigError.
  static ReferenceDetector from_manifest(const std::string& path);

  /// Built-in classes matching the synthetic scene palette.
  static ReferenceDetector with_default_classes(int native_size = 640);

  std::vector<DetectionBox> detect(const img::ImageBuffer& image) override;
  int native_size() const override { return native_size_; }
  bool thread_safe() const override { return true; }

  const std::vector<BlobClass>& classes() const { return classes_; }

 private:
  std::vector<BlobClass> classes_;
  int native_size_;
};

}  // namespace sentinel::detect
