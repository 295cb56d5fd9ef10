#include "sentinel/detect/reference_detector.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <utility>

#include "sentinel/core/error.hpp"
#include "sentinel/imaging/color.hpp"
#include "sentinel/imaging/components.hpp"

namespace sentinel::detect {

namespace {

int hue_distance(int a, int b) {
  const int d = std::abs(a - b) % 256;
  return std::min(d, 256 - d);
}

}  // namespace

ReferenceDetector::ReferenceDetector(std::vector<BlobClass> classes,
                                     int native_size)
    : classes_(std::move(classes)), native_size_(native_size) {
  if (native_size_ < 8) throw ConfigError("reference detector: native size too small");
}

ReferenceDetector ReferenceDetector::from_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw ConfigError("cannot open detector manifest: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("detector manifest parse error: " + std::string(e.what()));
  }
  if (!doc.is_object() || !doc.contains("classes") || !doc["classes"].is_array())
    throw ConfigError("detector manifest: missing \"classes\" array");

  std::vector<BlobClass> classes;
  for (const auto& entry : doc["classes"]) {
    if (!entry.is_object())
      throw ConfigError("detector manifest: class entries must be objects");
    BlobClass c;
    c.id = entry.value("id", static_cast<int>(classes.size()));
    c.name = entry.value("name", std::string("class_") + std::to_string(c.id));
    c.hue_center = entry.value("hue_center", c.hue_center);
    c.hue_tol = entry.value("hue_tol", c.hue_tol);
    c.s_min = entry.value("s_min", c.s_min);
    c.v_min = entry.value("v_min", c.v_min);
    c.min_area = entry.value("min_area", c.min_area);
    if (c.hue_center < 0 || c.hue_center > 255 || c.hue_tol < 0 ||
        c.min_area < 1)
      throw ConfigError("detector manifest: out-of-range class parameters");
    classes.push_back(std::move(c));
  }
  if (classes.empty()) throw ConfigError("detector manifest: no classes");
  return ReferenceDetector(std::move(classes), doc.value("native_size", 640));
}

ReferenceDetector ReferenceDetector::with_default_classes(int native_size) {
  // Hue centers on the [0,255] wheel: red 0, green 85, blue 170,
  // magenta 213. These match the synthetic scene palette.
  return ReferenceDetector(
      {
          {0, "litter_red", 0, 12, 120, 60, 4},
          {1, "litter_green", 85, 12, 120, 60, 4},
          {2, "litter_blue", 170, 12, 120, 60, 4},
          {3, "person", 213, 10, 120, 60, 4},
      },
      native_size);
}

std::vector<DetectionBox> ReferenceDetector::detect(
    const img::ImageBuffer& image) {
  if (image.channels != 3)
    throw Error("reference detector: RGB input required");
  const img::ImageBuffer hsv = img::rgb_to_hsv(image);

  std::vector<DetectionBox> boxes;
  for (const BlobClass& cls : classes_) {
    img::BinaryMask mask = img::BinaryMask::make(image.width, image.height);
    for (int y = 0; y < image.height; ++y)
      for (int x = 0; x < image.width; ++x) {
        const int h = hsv.at(x, y, 0), s = hsv.at(x, y, 1), v = hsv.at(x, y, 2);
        mask.set(x, y, s >= cls.s_min && v >= cls.v_min &&
                           hue_distance(h, cls.hue_center) <= cls.hue_tol);
      }
    const img::LabelMap lm =
        img::connected_components(mask, img::Connectivity::Eight);
    for (const auto& st : img::component_stats(lm)) {
      if (st.area < cls.min_area) continue;
      DetectionBox box;
      box.x = st.min_x;
      box.y = st.min_y;
      box.w = st.max_x - st.min_x + 1;
      box.h = st.max_y - st.min_y + 1;
      box.class_id = cls.id;
      // Saturating size prior: larger blobs are more certain.
      box.confidence =
          static_cast<double>(st.area) / (static_cast<double>(st.area) + 20.0);
      boxes.push_back(box);
    }
  }
  return boxes;
}

}  // namespace sentinel::detect
