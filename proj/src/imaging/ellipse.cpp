#include "sentinel/imaging/ellipse.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace sentinel::img {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

geom::Vec2 Ellipse::point(double t) const {
  const double ct = std::cos(theta), st = std::sin(theta);
  const double px = a * std::cos(t), py = b * std::sin(t);
  return {cx + px * ct - py * st, cy + px * st + py * ct};
}

bool Ellipse::contains(double x, double y) const {
  const double ct = std::cos(theta), st = std::sin(theta);
  const double dx = x - cx, dy = y - cy;
  const double u = dx * ct + dy * st;
  const double v = -dx * st + dy * ct;
  return (u * u) / (a * a) + (v * v) / (b * b) < 1.0;
}

double Ellipse::perimeter() const {
  const double h = ((a - b) * (a - b)) / ((a + b) * (a + b));
  return kPi * (a + b) * (1.0 + 3.0 * h / (10.0 + std::sqrt(4.0 - 3.0 * h)));
}

Conic conic_from_ellipse(const Ellipse& e) {
  const double ct = std::cos(e.theta), st = std::sin(e.theta);
  const double a2 = e.a * e.a, b2 = e.b * e.b;
  Conic k;
  k.a = ct * ct / a2 + st * st / b2;
  k.b = 2.0 * ct * st * (1.0 / a2 - 1.0 / b2);
  k.c = st * st / a2 + ct * ct / b2;
  k.d = -2.0 * k.a * e.cx - k.b * e.cy;
  k.e = -k.b * e.cx - 2.0 * k.c * e.cy;
  k.f = k.a * e.cx * e.cx + k.b * e.cx * e.cy + k.c * e.cy * e.cy - 1.0;
  return k;
}

std::optional<Ellipse> ellipse_from_conic(const Conic& k) {
  // Real ellipse requires B^2 - 4AC < 0 and a nondegenerate quadric.
  const double disc = k.b * k.b - 4.0 * k.a * k.c;
  if (!(disc < 0.0)) return std::nullopt;

  // Center solves the gradient system [2A B; B 2C] [cx cy]^T = [-D -E]^T.
  const double det = 4.0 * k.a * k.c - k.b * k.b;
  const double cx = (k.b * k.e - 2.0 * k.c * k.d) / det;
  const double cy = (k.b * k.d - 2.0 * k.a * k.e) / det;

  // Value of the quadric at the center; translating there leaves
  // A u^2 + B uv + C v^2 + fc = 0, an ellipse only when fc has the
  // opposite sign of A (and C).
  const double fc =
      k.a * cx * cx + k.b * cx * cy + k.c * cy * cy + k.d * cx + k.e * cy + k.f;
  if (fc == 0.0) return std::nullopt;

  // Normalize so the quadratic form equals +1 on the ellipse.
  const double qa = -k.a / fc, qb = -k.b / (2.0 * fc), qc = -k.c / fc;
  // Eigenvalues of [[qa qb][qb qc]] are 1/a^2 and 1/b^2; both must be > 0.
  const double tr = qa + qc;
  const double dd = std::sqrt(std::max(0.0, (qa - qc) * (qa - qc) / 4.0 + qb * qb));
  const double l1 = tr / 2.0 + dd, l2 = tr / 2.0 - dd;  // l1 >= l2
  if (!(l2 > 0.0) || !std::isfinite(l1)) return std::nullopt;

  Ellipse e;
  e.cx = cx;
  e.cy = cy;
  e.a = 1.0 / std::sqrt(l2);
  e.b = 1.0 / std::sqrt(l1);

  // Angle of the eigenvector for the smaller eigenvalue (major axis).
  double theta;
  if (std::abs(qb) < 1e-15 * std::max(std::abs(qa), std::abs(qc))) {
    theta = qa <= qc ? 0.0 : kPi / 2.0;
  } else {
    theta = std::atan2(l2 - qa, qb);
  }
  theta = std::fmod(theta, kPi);
  if (theta < 0.0) theta += kPi;
  if (theta >= kPi) theta -= kPi;
  e.theta = theta;
  return e;
}

std::optional<Conic> fit_conic(const std::vector<geom::Vec2>& pts) {
  const std::size_t n = pts.size();
  if (n < 5) return std::nullopt;

  // Shift to the centroid and scale to mean radius sqrt(2) before building
  // the design matrix; raw pixel coordinates make the system too
  // ill-conditioned for a stable nullspace.
  double mx = 0, my = 0;
  for (const auto& p : pts) {
    mx += p.x;
    my += p.y;
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double mr = 0;
  for (const auto& p : pts) mr += std::hypot(p.x - mx, p.y - my);
  mr /= static_cast<double>(n);
  if (mr < 1e-12) return std::nullopt;
  const double s = std::sqrt(2.0) / mr;

  Eigen::MatrixXd design(static_cast<Eigen::Index>(n), 6);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = (pts[i].x - mx) * s;
    const double v = (pts[i].y - my) * s;
    design(static_cast<Eigen::Index>(i), 0) = u * u;
    design(static_cast<Eigen::Index>(i), 1) = u * v;
    design(static_cast<Eigen::Index>(i), 2) = v * v;
    design(static_cast<Eigen::Index>(i), 3) = u;
    design(static_cast<Eigen::Index>(i), 4) = v;
    design(static_cast<Eigen::Index>(i), 5) = 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeFullV);
  if (svd.rank() < 5) return std::nullopt;
  const Eigen::VectorXd c = svd.matrixV().col(5);

  // Undo the normalization: with T mapping pixels to normalized
  // coordinates, the pixel-space conic matrix is T^T Cn T.
  Eigen::Matrix3d cn;
  cn << c(0), c(1) / 2.0, c(3) / 2.0,
        c(1) / 2.0, c(2), c(4) / 2.0,
        c(3) / 2.0, c(4) / 2.0, c(5);
  Eigen::Matrix3d t;
  t << s, 0, -s * mx,
       0, s, -s * my,
       0, 0, 1;
  const Eigen::Matrix3d cp = t.transpose() * cn * t;

  Conic k;
  k.a = cp(0, 0);
  k.b = 2.0 * cp(0, 1);
  k.c = cp(1, 1);
  k.d = 2.0 * cp(0, 2);
  k.e = 2.0 * cp(1, 2);
  k.f = cp(2, 2);
  return k;
}

std::vector<std::pair<int, int>> raster_perimeter(const Ellipse& e) {
  // Sample density proportional to arc length guarantees adjacent samples
  // land on the same or neighboring pixels.
  const int steps = std::max(16, static_cast<int>(std::ceil(e.perimeter() * 2.0)));
  std::vector<std::pair<int, int>> pixels;
  pixels.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double t = 2.0 * kPi * i / steps;
    const geom::Vec2 p = e.point(t);
    pixels.emplace_back(static_cast<int>(std::lround(p.x)),
                        static_cast<int>(std::lround(p.y)));
  }
  std::sort(pixels.begin(), pixels.end(),
            [](const auto& lhs, const auto& rhs) {
              return lhs.second != rhs.second ? lhs.second < rhs.second
                                              : lhs.first < rhs.first;
            });
  pixels.erase(std::unique(pixels.begin(), pixels.end()), pixels.end());
  return pixels;
}

void draw_ellipse_perimeter(BinaryMask& mask, const Ellipse& e) {
  for (const auto& [x, y] : raster_perimeter(e))
    if (x >= 0 && x < mask.width && y >= 0 && y < mask.height)
      mask.set(x, y, true);
}

}  // namespace sentinel::img
