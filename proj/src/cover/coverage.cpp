#include "sentinel/cover/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sentinel::cover {
namespace {

constexpr double kEps = 1e-9;

void validate_scene(const Scene& scene) {
  if (!scene.bounds.valid())
    throw std::invalid_argument("coverage: degenerate scene bounds");
}

}  // namespace

ProbeGrid generate_probes(const Scene& scene, double spacing,
                          double probe_height) {
  validate_scene(scene);
  if (!(spacing > 0.0))
    throw std::invalid_argument("coverage: spacing must be positive");

  const double y = scene.floor_height + probe_height;
  const int nx = static_cast<int>(
      std::floor((scene.bounds.max.x - scene.bounds.min.x) / spacing + kEps));
  const int nz = static_cast<int>(
      std::floor((scene.bounds.max.z - scene.bounds.min.z) / spacing + kEps));

  ProbeGrid grid;
  grid.spacing = spacing;
  int id = 0;
  for (int iz = 0; iz <= nz; ++iz)
    for (int ix = 0; ix <= nx; ++ix) {
      const geom::Vec3 p{scene.bounds.min.x + ix * spacing, y,
                         scene.bounds.min.z + iz * spacing};
      const bool blocked =
          std::any_of(scene.occluders.begin(), scene.occluders.end(),
                      [&](const geom::Aabb& box) { return box.contains(p); });
      if (!blocked) grid.probes.push_back({id++, p, 1.0});
    }
  return grid;
}

bool visible(const geom::CameraPose& camera, const geom::Vec3& probe,
             const Scene& scene) {
  const geom::Vec3 d = probe - camera.position;
  const double dist = d.norm();
  if (dist > camera.max_range) return false;
  if (dist > 0.0) {
    const geom::CameraFrame f = geom::camera_frame(camera);
    const double fwd = d.dot(f.forward);
    if (std::abs(std::atan2(d.dot(f.right), fwd)) > camera.hfov / 2.0)
      return false;
    if (std::abs(std::atan2(d.dot(f.up), fwd)) > camera.vfov / 2.0)
      return false;
  }
  return std::none_of(scene.occluders.begin(), scene.occluders.end(),
                      [&](const geom::Aabb& box) {
                        return geom::segment_hits_box(camera.position, probe,
                                                      box);
                      });
}

CoverageReport coverage(const std::vector<geom::CameraPose>& cameras,
                        const ProbeGrid& grid, const Scene& scene) {
  validate_scene(scene);
  CoverageReport report;
  report.per_camera.resize(cameras.size());
  std::vector<char> seen(grid.probes.size(), 0);
  for (std::size_t c = 0; c < cameras.size(); ++c)
    for (std::size_t i = 0; i < grid.probes.size(); ++i)
      if (visible(cameras[c], grid.probes[i].position, scene)) {
        report.per_camera[c].push_back(grid.probes[i].id);
        seen[i] = 1;
      }
  for (std::size_t i = 0; i < grid.probes.size(); ++i)
    (seen[i] ? report.covered : report.blind).push_back(grid.probes[i].id);
  report.coverage_ratio =
      grid.probes.empty()
          ? 0.0
          : static_cast<double>(report.covered.size()) / grid.probes.size();
  return report;
}

PlacementResult suggest_placement(
    const Scene& scene, const ProbeGrid& grid,
    const std::vector<geom::CameraPose>& candidates, double target_ratio) {
  validate_scene(scene);
  if (!(target_ratio > 0.0) || target_ratio > 1.0)
    throw std::invalid_argument("coverage: target_ratio outside (0,1]");

  const std::size_t n = grid.probes.size();
  std::vector<std::vector<char>> sees(candidates.size(),
                                      std::vector<char>(n, 0));
  for (std::size_t c = 0; c < candidates.size(); ++c)
    for (std::size_t i = 0; i < n; ++i)
      sees[c][i] = visible(candidates[c], grid.probes[i].position, scene);

  double total = 0.0;
  for (const auto& p : grid.probes) total += p.weight;

  PlacementResult result;
  std::vector<char> covered(n, 0);
  double covered_weight = 0.0;
  while (total > 0.0 && covered_weight / total + kEps < target_ratio) {
    int best = -1;
    double best_gain = 0.0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      double gain = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        if (sees[c][i] && !covered[i]) gain += grid.probes[i].weight;
      if (gain > best_gain + kEps) {
        best_gain = gain;
        best = static_cast<int>(c);
      }
    }
    if (best < 0) break;  // nothing left to gain
    result.chosen_indices.push_back(best);
    result.cameras.push_back(candidates[best]);
    for (std::size_t i = 0; i < n; ++i)
      if (sees[best][i] && !covered[i]) {
        covered[i] = 1;
        covered_weight += grid.probes[i].weight;
      }
  }
  result.achieved_ratio = total > 0.0 ? covered_weight / total : 0.0;
  result.shortfall = result.achieved_ratio + kEps < target_ratio;
  return result;
}

}  // namespace sentinel::cover
