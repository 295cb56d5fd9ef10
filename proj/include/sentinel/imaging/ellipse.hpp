/// Ellipse geometry: the rim shape recovered by the Hough transform, its
/// conic (quadratic form) representation, and perimeter rasterization.
#pragma once

#include <optional>
#include <vector>

#include "sentinel/core/geometry.hpp"
#include "sentinel/core/image.hpp"

namespace sentinel::img {

/// Center, semi-axes and rotation. Invariants: a >= b > 0, theta in [0, pi).
struct Ellipse {
  double cx = 0.0, cy = 0.0;
  double a = 1.0, b = 1.0;
  double theta = 0.0;

  /// Point at parameter t of the rotated parametric form.
  geom::Vec2 point(double t) const;
  /// True when (x, y) lies strictly inside the ellipse.
  bool contains(double x, double y) const;
  /// Ramanujan approximation of the perimeter length.
  double perimeter() const;
};

/// General conic A x^2 + B xy + C y^2 + D x + E y + F = 0.
struct Conic {
  double a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;
};

Conic conic_from_ellipse(const Ellipse& e);

/// Extract ellipse parameters; nullopt when the conic is not a real ellipse.
std::optional<Ellipse> ellipse_from_conic(const Conic& k);

/// Least-squares conic through >= 5 points (normalized for conditioning).
/// Returns nullopt for degenerate configurations.
std::optional<Conic> fit_conic(const std::vector<geom::Vec2>& pts);

/// Integer pixels of the rasterized perimeter, deduplicated, raster order.
std::vector<std::pair<int, int>> raster_perimeter(const Ellipse& e);

/// Draw the perimeter into a mask (pixels outside are skipped).
void draw_ellipse_perimeter(BinaryMask& mask, const Ellipse& e);

}  // namespace sentinel::img
