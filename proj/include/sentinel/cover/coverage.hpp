/// Camera-coverage analysis over a probe lattice: which floor points does a
/// camera set actually see, where are the blind spots, and which candidate
/// placements close them.
#pragma once

#include <vector>

#include "sentinel/core/geometry.hpp"

namespace sentinel::cover {

struct Scene {
  geom::Aabb bounds;
  std::vector<geom::Aabb> occluders;  // each contained in bounds
  double floor_height = 0.0;
};

struct Probe {
  int id = 0;
  geom::Vec3 position;
  double weight = 1.0;  // consumed by suggest_placement only
};

/// Floor lattice; probe ids are dense raster order (x fastest, then z).
struct ProbeGrid {
  double spacing = 1.0;
  std::vector<Probe> probes;
};

struct CoverageReport {
  std::vector<std::vector<int>> per_camera;  // visible probe ids, ascending
  std::vector<int> covered;                  // ascending, disjoint with blind
  std::vector<int> blind;
  double coverage_ratio = 0.0;
};

struct PlacementResult {
  std::vector<geom::CameraPose> cameras;
  std::vector<int> chosen_indices;  // into the candidate list, pick order
  double achieved_ratio = 0.0;
  bool shortfall = false;  // target unreachable with the given candidates
};

/// Lattice of points probe_height above the floor, stepping exactly
/// `spacing` from bounds.min along x and z; points inside an occluder
/// (boundary inclusive) are dropped. Throws on invalid bounds or spacing.
ProbeGrid generate_probes(const Scene& scene, double spacing,
                          double probe_height = 0.1);

/// True iff the probe lies inside the camera frustum (|angular offset| at
/// most half the fov on each axis), within max_range, and the sight segment
/// touches no occluder.
bool visible(const geom::CameraPose& camera, const geom::Vec3& probe,
             const Scene& scene);

CoverageReport coverage(const std::vector<geom::CameraPose>& cameras,
                        const ProbeGrid& grid, const Scene& scene);

/// Greedy weighted set cover: repeatedly pick the candidate seeing the most
/// still-blind probe weight, ties to the lower index, until the weighted
/// coverage ratio reaches target_ratio or no candidate helps (shortfall).
PlacementResult suggest_placement(const Scene& scene, const ProbeGrid& grid,
                                  const std::vector<geom::CameraPose>& candidates,
                                  double target_ratio);

}  // namespace sentinel::cover
