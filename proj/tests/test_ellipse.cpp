#include <doctest.h>

#include <cmath>

#include "sentinel/imaging/ellipse.hpp"

using namespace sentinel::img;

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_same(const Ellipse& got, const Ellipse& want, double tol) {
  CHECK(std::abs(got.cx - want.cx) <= tol);
  CHECK(std::abs(got.cy - want.cy) <= tol);
  CHECK(std::abs(got.a - want.a) <= tol);
  CHECK(std::abs(got.b - want.b) <= tol);
  double dt = std::abs(got.theta - want.theta);
  dt = std::min(dt, kPi - dt);
  CHECK(dt <= tol);
}

}  // namespace

TEST_CASE("parametric points satisfy the implicit equation") {
  const Ellipse e{100.5, 80.25, 40.0, 25.0, 0.7};
  const Conic k = conic_from_ellipse(e);
  for (int i = 0; i < 64; ++i) {
    const double t = 2 * kPi * i / 64;
    const auto p = e.point(t);
    const double v = k.a * p.x * p.x + k.b * p.x * p.y + k.c * p.y * p.y +
                     k.d * p.x + k.e * p.y + k.f;
    CHECK(std::abs(v) < 1e-9);
  }
}

TEST_CASE("conic round trip recovers ellipse parameters") {
  for (const Ellipse e : {Ellipse{100, 80, 40, 25, 0.0},
                          Ellipse{12.5, 200.0, 55.0, 54.0, 1.3},
                          Ellipse{-5.0, 3.0, 9.0, 4.0, 3.0},
                          Ellipse{0.0, 0.0, 30.0, 30.0, 0.0}}) {
    const auto back = ellipse_from_conic(conic_from_ellipse(e));
    REQUIRE(back.has_value());
    CHECK(std::abs(back->cx - e.cx) <= 1e-9);
    CHECK(std::abs(back->cy - e.cy) <= 1e-9);
    CHECK(std::abs(back->a - e.a) <= 1e-9);
    CHECK(std::abs(back->b - e.b) <= 1e-9);
    if (e.a != e.b) {
      double dt = std::abs(back->theta - e.theta);
      dt = std::min(dt, kPi - dt);
      CHECK(dt < 1e-9);
    }
    CHECK(back->theta >= 0.0);
    CHECK(back->theta < kPi);
    CHECK(back->a >= back->b);
  }
}

TEST_CASE("non-ellipse conics are rejected") {
  // x^2 - y^2 = 1 (hyperbola) and x^2 + y^2 = 0 (point).
  CHECK_FALSE(ellipse_from_conic({1, 0, -1, 0, 0, -1}).has_value());
  CHECK_FALSE(ellipse_from_conic({1, 0, 1, 0, 0, 0}).has_value());
  // x^2 + y^2 + 1 = 0 has no real points.
  CHECK_FALSE(ellipse_from_conic({1, 0, 1, 0, 0, 1}).has_value());
}

TEST_CASE("contains distinguishes interior from exterior") {
  const Ellipse e{50, 50, 20, 10, kPi / 4};
  CHECK(e.contains(50, 50));
  const auto on_axis = e.point(0.0);
  CHECK_FALSE(e.contains(on_axis.x + 1.0, on_axis.y + 1.0));
  CHECK(e.contains(50 + 5 * std::cos(kPi / 4), 50 + 5 * std::sin(kPi / 4)));
}

TEST_CASE("perimeter approximation matches a circle exactly") {
  const Ellipse circle{0, 0, 30, 30, 0};
  CHECK(circle.perimeter() == doctest::Approx(2 * kPi * 30).epsilon(1e-9));
  // Ramanujan for 2:1 is good to a few parts per million.
  const Ellipse e{0, 0, 40, 20, 0};
  CHECK(e.perimeter() == doctest::Approx(193.7654).epsilon(1e-3));
}

TEST_CASE("fit_conic recovers a known ellipse from exact points") {
  const Ellipse truth{320.0, 240.0, 90.0, 45.0, 0.6};
  std::vector<sentinel::geom::Vec2> pts;
  for (int i = 0; i < 24; ++i) pts.push_back(truth.point(2 * kPi * i / 24));
  const auto conic = fit_conic(pts);
  REQUIRE(conic.has_value());
  const auto got = ellipse_from_conic(*conic);
  REQUIRE(got.has_value());
  check_same(*got, truth, 1e-6);
}

TEST_CASE("fit_conic needs five points and non-degenerate geometry") {
  std::vector<sentinel::geom::Vec2> four = {
      {0, 0}, {1, 0}, {0, 1}, {1, 1}};
  CHECK_FALSE(fit_conic(four).has_value());

  // Collinear points admit no unique conic.
  std::vector<sentinel::geom::Vec2> line;
  for (int i = 0; i < 8; ++i) line.push_back({double(i), 2.0 * i + 1});
  const auto fitted = fit_conic(line);
  if (fitted) CHECK_FALSE(ellipse_from_conic(*fitted).has_value());
}

TEST_CASE("raster_perimeter pixels are deduplicated and near the curve") {
  const Ellipse e{40, 30, 20, 12, 0.4};
  const auto pixels = raster_perimeter(e);
  REQUIRE(!pixels.empty());
  for (std::size_t i = 1; i < pixels.size(); ++i)
    CHECK(pixels[i] != pixels[i - 1]);
  const Conic k = conic_from_ellipse(e);
  for (const auto& [x, y] : pixels) {
    // Normalized algebraic distance below ~1.5 px.
    const double v = k.a * x * x + k.b * x * y + k.c * y * y + k.d * x +
                     k.e * y + k.f;
    const double gx = 2 * k.a * x + k.b * y + k.d;
    const double gy = k.b * x + 2 * k.c * y + k.e;
    CHECK(std::abs(v) / std::hypot(gx, gy) <= 1.5);
  }
}

TEST_CASE("draw_ellipse_perimeter clips to the mask") {
  BinaryMask m = BinaryMask::make(50, 40);
  draw_ellipse_perimeter(m, {25, 20, 30, 15, 0.0});  // overflows left/right
  CHECK(m.count() > 0);
}
