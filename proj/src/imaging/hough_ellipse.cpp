#include "sentinel/imaging/hough_ellipse.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "sentinel/imaging/morphology.hpp"

namespace sentinel::img {

namespace {

double score_ellipse(const Ellipse& e, const BinaryMask& band) {
  const auto pixels = raster_perimeter(e);
  if (pixels.empty()) return 0.0;
  int hits = 0;
  for (const auto& [x, y] : pixels) {
    if (x < 0 || x >= band.width || y < 0 || y >= band.height) continue;
    if (band.at(x, y)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(pixels.size());
}

bool similar(const Ellipse& lhs, const Ellipse& rhs) {
  if (std::abs(lhs.cx - rhs.cx) > 3.0 || std::abs(lhs.cy - rhs.cy) > 3.0)
    return false;
  if (std::abs(lhs.a - rhs.a) > 3.0 || std::abs(lhs.b - rhs.b) > 3.0)
    return false;
  double dt = std::abs(lhs.theta - rhs.theta);
  constexpr double kPi = 3.14159265358979323846;
  dt = std::min(dt, kPi - dt);
  // Near-circular candidates have an arbitrary orientation.
  const bool circular = lhs.a - lhs.b < 1.5 && rhs.a - rhs.b < 1.5;
  return circular || dt <= 0.2;
}

std::optional<Ellipse> refine_on_inliers(const Ellipse& seed,
                                         const std::vector<geom::Vec2>& edge_pts,
                                         double axis_min, double axis_max) {
  // Inliers: edge pixels within ~2 px of the perimeter, measured through
  // the normalized algebraic residual scaled by the local gradient.
  const Conic k = conic_from_ellipse(seed);
  std::vector<geom::Vec2> inliers;
  for (const auto& p : edge_pts) {
    const double val = k.a * p.x * p.x + k.b * p.x * p.y + k.c * p.y * p.y +
                       k.d * p.x + k.e * p.y + k.f;
    const double gx = 2.0 * k.a * p.x + k.b * p.y + k.d;
    const double gy = k.b * p.x + 2.0 * k.c * p.y + k.e;
    const double g = std::hypot(gx, gy);
    if (g < 1e-12) continue;
    if (std::abs(val) / g <= 2.0) inliers.push_back(p);
  }
  if (inliers.size() < 8) return std::nullopt;
  const auto conic = fit_conic(inliers);
  if (!conic) return std::nullopt;
  auto refined = ellipse_from_conic(*conic);
  if (!refined) return std::nullopt;
  if (refined->b < axis_min || refined->a > axis_max) return std::nullopt;
  return refined;
}

}  // namespace

std::vector<ScoredEllipse> hough_ellipse(const BinaryMask& edges,
                                         const Rect& roi, double axis_min,
                                         double axis_max,
                                         const HoughEllipseOptions& opts) {
  if (axis_min < 3.0)
    throw std::invalid_argument("hough_ellipse: axis_min must be >= 3");
  if (axis_max < axis_min)
    throw std::invalid_argument("hough_ellipse: axis_max < axis_min");

  std::vector<geom::Vec2> edge_pts;
  for (int y = std::max(0, roi.y);
       y < std::min(edges.height, roi.y + roi.h); ++y)
    for (int x = std::max(0, roi.x);
         x < std::min(edges.width, roi.x + roi.w); ++x)
      if (edges.at(x, y))
        edge_pts.push_back({static_cast<double>(x), static_cast<double>(y)});
  if (edge_pts.size() < 5) return {};

  const BinaryMask band = dilate(edges, 1);

  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::size_t> pick(0, edge_pts.size() - 1);

  std::vector<ScoredEllipse> kept;
  for (int it = 0; it < opts.iterations; ++it) {
    std::size_t idx[5];
    bool distinct = true;
    for (int i = 0; i < 5; ++i) {
      idx[i] = pick(rng);
      for (int j = 0; j < i; ++j)
        if (idx[j] == idx[i]) distinct = false;
    }
    if (!distinct) continue;
    std::vector<geom::Vec2> sample = {edge_pts[idx[0]], edge_pts[idx[1]],
                                      edge_pts[idx[2]], edge_pts[idx[3]],
                                      edge_pts[idx[4]]};
    const auto conic = fit_conic(sample);
    if (!conic) continue;
    auto cand = ellipse_from_conic(*conic);
    if (!cand) continue;
    if (cand->b < axis_min || cand->a > axis_max) continue;
    if (!Rect{roi.x, roi.y, roi.w, roi.h}.contains(
            static_cast<int>(std::lround(cand->cx)),
            static_cast<int>(std::lround(cand->cy))))
      continue;

    if (opts.refine) {
      if (auto refined = refine_on_inliers(*cand, edge_pts, axis_min, axis_max))
        cand = refined;
    }

    const double score = score_ellipse(*cand, band);
    if (score < opts.min_score) continue;

    bool merged = false;
    for (auto& existing : kept) {
      if (similar(existing.ellipse, *cand)) {
        if (score > existing.score) existing = {*cand, score};
        merged = true;
        break;
      }
    }
    if (!merged) kept.push_back({*cand, score});
  }

  std::sort(kept.begin(), kept.end(), [](const auto& lhs, const auto& rhs) {
    if (lhs.score != rhs.score) return lhs.score > rhs.score;
    if (lhs.ellipse.cx != rhs.ellipse.cx) return lhs.ellipse.cx < rhs.ellipse.cx;
    return lhs.ellipse.cy < rhs.ellipse.cy;
  });
  if (static_cast<int>(kept.size()) > opts.top_k)
    kept.resize(static_cast<std::size_t>(opts.top_k));
  return kept;
}

}  // namespace sentinel::img
