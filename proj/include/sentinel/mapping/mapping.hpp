/// Floor-plane calibration from fiducial-marked cubes, image-to-floor
/// mapping of detections, metric distances, and per-object track history.
#pragma once

#include <array>
#include <map>
#include <vector>

#include "sentinel/core/geometry.hpp"
#include "sentinel/core/image.hpp"
#include "sentinel/detect/detection.hpp"

namespace sentinel::mapping {

/// One decoded square marker. Corners are sub-pixel image coordinates,
/// clockwise starting at the marker's own top-left (canonical orientation,
/// independent of in-plane rotation). They form a strictly convex quad.
struct FiducialObservation {
  int marker_id = 0;
  std::array<geom::Vec2, 4> corners;
};

/// Row-major 3x3 map from image homogeneous coordinates to floor-plane
/// metres, scaled so m[8] == 1. Invertible by contract.
struct Homography {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  /// Apply to an image point. Throws Error when the point lies on the
  /// horizon line (homogeneous w ~ 0).
  geom::Vec2 apply(const geom::Vec2& image_pt) const;

  /// Throws Error when numerically singular.
  Homography inverse() const;
};

/// Calibration result: the homography plus the image-space RMS residual of
/// reprojecting the world points back onto the observed anchors.
struct Calibration {
  Homography h;
  double reproj_rms_px = 0.0;
};

/// Detection lifted onto the floor plane.
struct MappedObject {
  int object_id = -1;
  geom::Vec2 floor_xy;
  long frame_index = 0;
  detect::DetectionBox source;
};

struct TrackPoint {
  long frame_index = 0;
  geom::Vec2 floor_xy;
};

/// Frame indices are strictly increasing within a track.
struct Track {
  int track_id = 0;
  std::vector<TrackPoint> points;
};

struct TrackHistory {
  std::vector<Track> tracks;  // ids dense in creation order
};

/// Top-view visit-count raster. Cell (cx, cy) covers
/// [origin + c*cell, origin + (c+1)*cell) except the last row/column,
/// which also absorbs the upper boundary.
struct FloorMap {
  geom::Vec2 origin;
  double cell = 0.1;
  int width = 0, height = 0;
  std::vector<long> counts;  // row-major

  long at(int cx, int cy) const {
    return counts[static_cast<std::size_t>(cy) * width + cx];
  }
};

/// Find square binary markers: 4x4 payload inside a one-cell dark border.
/// Adaptive threshold, quadrilateral candidates from component boundaries,
/// perspective rectification, grid decode with rotation disambiguation.
/// Accepts ids < dictionary_size; returns observations sorted by id.
std::vector<FiducialObservation> detect_fiducials(const img::ImageBuffer& frame,
                                                  int dictionary_size = 16);

/// Fit image->floor homography by Hartley-normalized DLT over the bottom
/// edge midpoints of the observed markers, least squares across all of
/// them. marker_world gives the floor position of each marker-cube base in
/// metres; observations without a world entry are ignored. Throws Error on
/// fewer than 4 usable correspondences or a collinear configuration.
Calibration calibrate(const std::vector<FiducialObservation>& observations,
                      const std::map<int, geom::Vec2>& marker_world);

/// Map the ground contact point (bottom-center of the box) to floor
/// metres. Throws Error when the point lies on the horizon.
MappedObject map_to_floor(const Homography& h, const detect::DetectionBox& box);

/// Euclidean floor distance in whole centimetres (round half away from 0).
int distance_cm(const MappedObject& a, const MappedObject& b);

/// Position relative to a reference cube base instead of the floor origin.
geom::Vec2 relative_to(const MappedObject& obj, const geom::Vec2& cube_base);

/// Nearest-neighbor association of this frame's mapped objects to track
/// heads, gated by max_assoc_dist metres. Closest pairs match first;
/// unmatched detections open new tracks; unmatched tracks stay idle. A
/// track only ever extends to a strictly larger frame index, and no two
/// tracks take the same detection.
TrackHistory update_tracks(TrackHistory history,
                           const std::vector<MappedObject>& mapped,
                           double max_assoc_dist);

/// Rasterize visit counts over [min_xy, max_xy] at `cell` metres per cell.
/// Points outside the bounds are dropped. Throws std::invalid_argument on
/// an empty extent or non-positive cell size.
FloorMap to_floor_map(const TrackHistory& history, const geom::Vec2& min_xy,
                      const geom::Vec2& max_xy, double cell = 0.1);

}  // namespace sentinel::mapping
