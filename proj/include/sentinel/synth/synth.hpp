/// Deterministic synthetic scene renderer with ground truth: flat-shaded
/// perspective rasterization of floor, litter, puddles, bins, person
/// silhouettes, and marker cubes, plus the manifest the evaluator scores
/// against.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sentinel/bins/occupancy.hpp"
#include "sentinel/core/geometry.hpp"
#include "sentinel/core/image.hpp"
#include "sentinel/mapping/mapping.hpp"

namespace sentinel::synth {

enum class ItemKind { LitterBlob, Bin, Puddle, PersonSilhouette, MarkerCube };

std::string to_string(ItemKind kind);
ItemKind item_kind_from_string(const std::string& name);

/// One placed object. pos is the floor point (metres); velocity moves it
/// per frame. size is the footprint diameter (cube side for markers,
/// shoulder width for persons).
struct SceneItem {
  ItemKind kind = ItemKind::LitterBlob;
  geom::Vec2 pos;
  geom::Vec2 velocity;
  double size = 0.1;
  double height = 1.7;                    // person only
  std::array<int, 3> rgb{200, 30, 30};    // litter color
  bool full = false;                      // bin contents
  std::array<double, 2> occluded_arc{0, 0};  // bin rim arc hidden [a, b)
  int marker_id = 0;
  std::optional<double> facing;           // marker face yaw; default: camera
};

/// Brightness-textured floor. Channel scaling keeps saturation stable so
/// the texture never reads as a stain.
struct FloorStyle {
  std::array<int, 3> rgb{150, 90, 30};
  double texture_amp = 12.0;  // +- per-tile brightness, 0..255 scale
  double tile = 0.25;         // metres
};

struct SceneSpec {
  FloorStyle floor;
  double noise_amp = 0.0;  // multiplicative per-pixel noise, 0..255 scale
  geom::CameraPose camera;
  int width = 640, height = 480;
  std::optional<geom::Vec2> bounds_min, bounds_max;  // floor rect
  std::vector<SceneItem> items;
};

/// Ground-truth detection box (pre-occlusion paint extent).
struct TrueBox {
  double x = 0, y = 0, w = 0, h = 0;
  int class_id = -1;  // reference-detector class, -1 if not detectable
  ItemKind kind = ItemKind::LitterBlob;
  bool off_screen = false;
  long pixel_area = 0;  // painted pixels
};

struct FrameTruth {
  int frame = 0;
  std::vector<TrueBox> boxes;          // litter + persons
  img::BinaryMask stain_mask;          // visible puddle pixels
  std::vector<img::Rect> bin_rois;
  std::vector<bins::BinState> bin_states;
  std::vector<geom::Vec2> floor_positions;            // on-screen persons
  std::vector<std::pair<int, geom::Vec2>> markers;    // id, base anchor
  std::vector<std::string> warnings;
};

/// Parse a scene file. Throws ConfigError with the offending path/line.
SceneSpec load_scene_spec(const std::string& path);

/// Render one frame. Identical (spec, frame, seed) gives identical pixels.
img::ImageBuffer render_frame(const SceneSpec& spec, int frame,
                              std::uint64_t seed, FrameTruth& truth);

/// Exact image->floor homography of the spec camera (pinhole over the
/// y = 0 plane). Throws Error for a degenerate (horizon-only) view.
mapping::Homography floor_homography(const geom::CameraPose& camera,
                                     int width, int height);

struct SynthResult {
  std::vector<std::string> frame_files;   // relative to out_dir
  std::string manifest_file;              // "manifest.jsonl"
  std::string homography_file;            // "homography.json"
  std::vector<std::string> warnings;
};

/// Render `frames` frames into out_dir: frame_%05d.png, true stain masks
/// as stain_%05d.pgm, manifest.jsonl (one line per frame), and the exact
/// camera homography. frames >= 1. Off-frustum items warn and are recorded
/// as off-screen.
SynthResult synthesize(const SceneSpec& spec, int frames, std::uint64_t seed,
                       const std::string& out_dir);

}  // namespace sentinel::synth
