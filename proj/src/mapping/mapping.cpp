#include "sentinel/mapping/mapping.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "sentinel/core/error.hpp"
#include "sentinel/imaging/color.hpp"
#include "sentinel/imaging/components.hpp"

namespace sentinel::mapping {

namespace {

// 16 payload codes, bit r*4+c set = white cell. Any two entries differ in
// at least 3 bits across all four in-plane rotations, and no entry
// collides with a rotation of itself, so decode is unambiguous.
constexpr std::uint16_t kCodebook[16] = {
    0x19a7, 0x352a, 0x4436, 0x5dae, 0x5e07, 0x61bf, 0x8127, 0x941b,
    0x95e2, 0x99ab, 0xc66d, 0xcc3f, 0xce87, 0xd1a3, 0xe503, 0xf013,
};

std::uint16_t rotate_cw(std::uint16_t code) {
  std::uint16_t out = 0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (code >> ((3 - c) * 4 + r) & 1) out |= 1 << (r * 4 + c);
  return out;
}

img::ImageBuffer to_gray(const img::ImageBuffer& frame) {
  if (frame.channels == 1) return frame;
  return img::rgb_to_gray(frame);
}

// mean-offset adaptive threshold; true = darker than the local mean
img::BinaryMask dark_mask(const img::ImageBuffer& gray, int half, int offset) {
  const int w = gray.width, h = gray.height;
  std::vector<long long> integral(static_cast<std::size_t>(w + 1) * (h + 1),
                                  0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      integral[(y + 1ll) * (w + 1) + (x + 1)] =
          gray.at(x, y) + integral[y * (w + 1ll) + (x + 1)] +
          integral[(y + 1ll) * (w + 1) + x] - integral[y * (w + 1ll) + x];
  img::BinaryMask out = img::BinaryMask::make(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const int x0 = std::max(0, x - half), x1 = std::min(w - 1, x + half);
      const int y0 = std::max(0, y - half), y1 = std::min(h - 1, y + half);
      const long long sum = integral[(y1 + 1ll) * (w + 1) + (x1 + 1)] -
                            integral[(y0 + 0ll) * (w + 1) + (x1 + 1)] -
                            integral[(y1 + 1ll) * (w + 1) + x0] +
                            integral[(y0 + 0ll) * (w + 1) + x0];
      const double mean =
          static_cast<double>(sum) / ((x1 - x0 + 1) * (y1 - y0 + 1));
      out.set(x, y, gray.at(x, y) < mean - offset);
    }
  return out;
}

double cross2(const geom::Vec2& o, const geom::Vec2& a, const geom::Vec2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew monotone chain on integer pixel centers.
std::vector<geom::Vec2> convex_hull(std::vector<geom::Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const auto& a, const auto& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());
  if (pts.size() < 3) return pts;
  std::vector<geom::Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (k >= lower && cross2(hull[k - 2], hull[k - 1], *it) <= 0) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  return hull;  // counterclockwise in (x right, y up); clockwise on screen
}

double quad_area(const std::array<geom::Vec2, 4>& q) {
  double s = 0;
  for (int i = 0; i < 4; ++i) {
    const auto& a = q[i];
    const auto& b = q[(i + 1) % 4];
    s += a.x * b.y - b.x * a.y;
  }
  return std::abs(s) / 2;
}

// Maximum-area quadrilateral with vertices on the hull: fix a diagonal,
// take the best third point on each side. Hulls here are tiny.
std::array<int, 4> max_area_quad(const std::vector<geom::Vec2>& hull) {
  const int n = static_cast<int>(hull.size());
  std::array<int, 4> best{0, 1, 2, 3 % n};
  double best_area = -1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 2; j < n; ++j) {
      double a1 = -1, a2 = -1;
      int k1 = -1, k2 = -1;
      for (int k = i + 1; k < j; ++k) {
        const double a = std::abs(cross2(hull[i], hull[j], hull[k]));
        if (a > a1) a1 = a, k1 = k;
      }
      for (int k = (j + 1) % n; k != i; k = (k + 1) % n) {
        const double a = std::abs(cross2(hull[i], hull[j], hull[k]));
        if (a > a2) a2 = a, k2 = k;
      }
      if (k1 < 0 || k2 < 0) continue;
      if (a1 + a2 > best_area) {
        best_area = a1 + a2;
        best = {i, k1, j, k2};
      }
    }
  return best;
}

struct Line {
  geom::Vec2 point, dir;  // dir unit length
};

Line through(const geom::Vec2& a, const geom::Vec2& b) {
  geom::Vec2 d = b - a;
  const double n = d.norm();
  if (n > 0) d = d * (1.0 / n);
  return {a, d};
}

Line fit_line(const std::vector<geom::Vec2>& pts) {
  geom::Vec2 c{0, 0};
  for (const auto& p : pts) c = c + p;
  c = c * (1.0 / pts.size());
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& p : pts) {
    sxx += (p.x - c.x) * (p.x - c.x);
    sxy += (p.x - c.x) * (p.y - c.y);
    syy += (p.y - c.y) * (p.y - c.y);
  }
  Eigen::Matrix2d cov;
  cov << sxx, sxy, sxy, syy;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov);
  const auto v = es.eigenvectors().col(1);  // largest eigenvalue
  return {c, {v(0), v(1)}};
}

bool intersect(const Line& a, const Line& b, geom::Vec2& out) {
  const double den = a.dir.x * b.dir.y - a.dir.y * b.dir.x;
  if (std::abs(den) < 1e-9) return false;
  const geom::Vec2 d = b.point - a.point;
  const double t = (d.x * b.dir.y - d.y * b.dir.x) / den;
  out = a.point + a.dir * t;
  return true;
}

double point_line_dist(const geom::Vec2& p, const Line& l) {
  const geom::Vec2 d = p - l.point;
  return std::abs(d.x * l.dir.y - d.y * l.dir.x);
}

bool strictly_convex(const std::array<geom::Vec2, 4>& q) {
  double sign = 0;
  for (int i = 0; i < 4; ++i) {
    const double c = cross2(q[i], q[(i + 1) % 4], q[(i + 2) % 4]);
    if (std::abs(c) < 1e-9) return false;
    if (sign == 0)
      sign = c;
    else if (c * sign < 0)
      return false;
  }
  return true;
}

// Homography sending the canonical 6x6-cell grid corners to the quad.
Eigen::Matrix3d grid_to_image(const std::array<geom::Vec2, 4>& quad) {
  const double src[4][2] = {{0, 0}, {6, 0}, {6, 6}, {0, 6}};
  Eigen::Matrix<double, 8, 8> a = Eigen::Matrix<double, 8, 8>::Zero();
  Eigen::Matrix<double, 8, 1> b;
  for (int i = 0; i < 4; ++i) {
    const double u = src[i][0], v = src[i][1];
    const double x = quad[i].x, y = quad[i].y;
    a.row(2 * i) << u, v, 1, 0, 0, 0, -u * x, -v * x;
    a.row(2 * i + 1) << 0, 0, 0, u, v, 1, -u * y, -v * y;
    b(2 * i) = x;
    b(2 * i + 1) = y;
  }
  const Eigen::Matrix<double, 8, 1> h = a.fullPivLu().solve(b);
  Eigen::Matrix3d m;
  m << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), 1;
  return m;
}

double bilinear(const img::ImageBuffer& gray, double x, double y) {
  const int x0 = std::clamp(static_cast<int>(std::floor(x)), 0, gray.width - 1);
  const int y0 =
      std::clamp(static_cast<int>(std::floor(y)), 0, gray.height - 1);
  const int x1 = std::min(x0 + 1, gray.width - 1);
  const int y1 = std::min(y0 + 1, gray.height - 1);
  const double fx = std::clamp(x - x0, 0.0, 1.0);
  const double fy = std::clamp(y - y0, 0.0, 1.0);
  return (1 - fx) * (1 - fy) * gray.at(x0, y0) +
         fx * (1 - fy) * gray.at(x1, y0) + (1 - fx) * fy * gray.at(x0, y1) +
         fx * fy * gray.at(x1, y1);
}

// Median gray over a 3x3 probe pattern inside one grid cell.
double sample_cell(const img::ImageBuffer& gray, const Eigen::Matrix3d& g2i,
                   int row, int col) {
  std::array<double, 9> vals;
  int n = 0;
  for (double fy : {0.3, 0.5, 0.7})
    for (double fx : {0.3, 0.5, 0.7}) {
      const Eigen::Vector3d p = g2i * Eigen::Vector3d(col + fx, row + fy, 1);
      vals[n++] = bilinear(gray, p(0) / p(2), p(1) / p(2));
    }
  std::nth_element(vals.begin(), vals.begin() + 4, vals.end());
  return vals[4];
}

struct DecodeResult {
  int id = -1;
  int rotation = 0;  // clockwise turns applied to the observed grid
};

DecodeResult decode(const std::array<std::array<bool, 6>, 6>& cells,
                    int dictionary_size) {
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c)
      if ((r == 0 || r == 5 || c == 0 || c == 5) && cells[r][c]) return {};

  std::uint16_t code = 0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (cells[r + 1][c + 1]) code |= 1 << (r * 4 + c);

  for (int rot = 0; rot < 4; ++rot) {
    for (int id = 0; id < dictionary_size; ++id)
      if (code == kCodebook[id]) return {id, rot};
    code = rotate_cw(code);
  }
  return {};
}

Eigen::Matrix3d to_eigen(const Homography& h) {
  Eigen::Matrix3d m;
  m << h.m[0], h.m[1], h.m[2], h.m[3], h.m[4], h.m[5], h.m[6], h.m[7], h.m[8];
  return m;
}

Homography from_eigen(const Eigen::Matrix3d& m) {
  if (std::abs(m(2, 2)) < 1e-12 * m.cwiseAbs().maxCoeff())
    throw Error("mapping: homography cannot be normalized");
  Homography h;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) h.m[r * 3 + c] = m(r, c) / m(2, 2);
  return h;
}

// Similarity moving points to centroid 0 with mean distance sqrt(2).
Eigen::Matrix3d hartley(const std::vector<geom::Vec2>& pts) {
  geom::Vec2 c{0, 0};
  for (const auto& p : pts) c = c + p;
  c = c * (1.0 / pts.size());
  double mean = 0;
  for (const auto& p : pts) mean += (p - c).norm();
  mean /= pts.size();
  const double s = mean > 0 ? std::sqrt(2.0) / mean : 1.0;
  Eigen::Matrix3d t;
  t << s, 0, -s * c.x, 0, s, -s * c.y, 0, 0, 1;
  return t;
}

bool collinear(const std::vector<geom::Vec2>& pts) {
  Eigen::MatrixXd m(2, pts.size());
  geom::Vec2 c{0, 0};
  for (const auto& p : pts) c = c + p;
  c = c * (1.0 / pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    m(0, i) = pts[i].x - c.x;
    m(1, i) = pts[i].y - c.y;
  }
  const auto sv = m.jacobiSvd().singularValues();
  return sv(1) <= 1e-10 * (sv(0) + 1.0);
}

}  // namespace

geom::Vec2 Homography::apply(const geom::Vec2& p) const {
  const double w = m[6] * p.x + m[7] * p.y + m[8];
  if (std::abs(w) < 1e-10)
    throw Error("mapping: point lies on the horizon line");
  return {(m[0] * p.x + m[1] * p.y + m[2]) / w,
          (m[3] * p.x + m[4] * p.y + m[5]) / w};
}

Homography Homography::inverse() const {
  const Eigen::Matrix3d e = to_eigen(*this);
  if (std::abs(e.determinant()) < 1e-12)
    throw Error("mapping: homography is singular");
  return from_eigen(Eigen::Matrix3d(e.inverse()));
}

std::vector<FiducialObservation> detect_fiducials(const img::ImageBuffer& frame,
                                                  int dictionary_size) {
  if (dictionary_size < 1 || dictionary_size > 16)
    throw std::invalid_argument("mapping: dictionary_size must be in 1..16");
  const img::ImageBuffer gray = to_gray(frame);
  const img::BinaryMask dark = dark_mask(gray, 7, 8);
  const img::LabelMap labels =
      img::connected_components(dark, img::Connectivity::Eight);
  const auto stats = img::component_stats(labels);

  std::vector<FiducialObservation> out;
  for (const auto& st : stats) {
    if (st.area < 80) continue;
    if (st.min_x == 0 || st.min_y == 0 || st.max_x == gray.width - 1 ||
        st.max_y == gray.height - 1)
      continue;
    const int bw = st.max_x - st.min_x + 1, bh = st.max_y - st.min_y + 1;
    if (bw < 12 || bh < 12) continue;

    std::vector<geom::Vec2> pixels;
    pixels.reserve(st.area);
    for (int y = st.min_y; y <= st.max_y; ++y)
      for (int x = st.min_x; x <= st.max_x; ++x)
        if (labels.at(x, y) == st.label)
          pixels.push_back({static_cast<double>(x), static_cast<double>(y)});

    const auto hull = convex_hull(pixels);
    if (hull.size() < 4) continue;
    const auto idx = max_area_quad(hull);
    std::array<geom::Vec2, 4> quad{hull[idx[0]], hull[idx[1]], hull[idx[2]],
                                   hull[idx[3]]};
    const double area = quad_area(quad);
    if (area < 100 || st.area < 0.25 * area || st.area > 1.05 * area)
      continue;

    // Sub-pixel refinement: fit each side to the outer boundary pixels
    // near it, then intersect adjacent sides.
    std::array<Line, 4> sides;
    for (int i = 0; i < 4; ++i)
      sides[i] = through(quad[i], quad[(i + 1) % 4]);
    std::array<std::vector<geom::Vec2>, 4> support;
    for (const auto& p : pixels) {
      const bool boundary =
          p.x == st.min_x || p.x == st.max_x || p.y == st.min_y ||
          p.y == st.max_y ||
          !labels.at(static_cast<int>(p.x) - 1, static_cast<int>(p.y)) ||
          !labels.at(static_cast<int>(p.x) + 1, static_cast<int>(p.y)) ||
          !labels.at(static_cast<int>(p.x), static_cast<int>(p.y) - 1) ||
          !labels.at(static_cast<int>(p.x), static_cast<int>(p.y) + 1);
      if (!boundary) continue;
      for (int i = 0; i < 4; ++i) {
        if (point_line_dist(p, sides[i]) > 1.5) continue;
        if ((p - quad[i]).norm() < 3 || (p - quad[(i + 1) % 4]).norm() < 3)
          continue;
        support[i].push_back(p);
      }
    }
    std::array<geom::Vec2, 4> refined = quad;
    std::array<Line, 4> fitted = sides;
    for (int i = 0; i < 4; ++i)
      if (support[i].size() >= 2) fitted[i] = fit_line(support[i]);
    for (int i = 0; i < 4; ++i) {
      geom::Vec2 p;
      if (intersect(fitted[(i + 3) % 4], fitted[i], p) &&
          (p - quad[i]).norm() < 4)
        refined[i] = p;
    }
    if (!strictly_convex(refined)) continue;

    // Hull order is clockwise on screen; start at the screen-top-left
    // vertex so the rectified grid has a fixed orientation.
    int start = 0;
    for (int i = 1; i < 4; ++i)
      if (refined[i].x + refined[i].y < refined[start].x + refined[start].y)
        start = i;
    std::array<geom::Vec2, 4> ordered;
    for (int i = 0; i < 4; ++i) ordered[i] = refined[(start + i) % 4];

    const Eigen::Matrix3d g2i = grid_to_image(ordered);
    std::array<std::array<bool, 6>, 6> cells{};
    double minv = 255, maxv = 0;
    std::array<std::array<double, 6>, 6> vals;
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c) {
        vals[r][c] = sample_cell(gray, g2i, r, c);
        minv = std::min(minv, vals[r][c]);
        maxv = std::max(maxv, vals[r][c]);
      }
    if (maxv - minv < 40) continue;
    const double thr = (minv + maxv) / 2;
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c) cells[r][c] = vals[r][c] > thr;

    const DecodeResult dec = decode(cells, dictionary_size);
    if (dec.id < 0) continue;

    // rotate_cw^rot maps the observed grid onto the canonical pattern, so
    // the marker's own top-left sits at observed vertex (4 - rot) % 4.
    FiducialObservation obs;
    obs.marker_id = dec.id;
    const int k = (4 - dec.rotation) % 4;
    for (int i = 0; i < 4; ++i) obs.corners[i] = ordered[(k + i) % 4];
    out.push_back(obs);
  }

  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.marker_id < b.marker_id;
  });
  return out;
}

Calibration calibrate(const std::vector<FiducialObservation>& observations,
                      const std::map<int, geom::Vec2>& marker_world) {
  std::vector<geom::Vec2> img_pts, world_pts;
  for (const auto& obs : observations) {
    const auto it = marker_world.find(obs.marker_id);
    if (it == marker_world.end()) continue;
    img_pts.push_back((obs.corners[2] + obs.corners[3]) * 0.5);
    world_pts.push_back(it->second);
  }
  if (img_pts.size() < 4)
    throw Error("mapping: calibration needs at least 4 markers with known "
                "world positions");
  if (collinear(img_pts) || collinear(world_pts))
    throw Error("mapping: calibration points are collinear");

  const Eigen::Matrix3d ti = hartley(img_pts);
  const Eigen::Matrix3d tw = hartley(world_pts);
  const std::size_t n = img_pts.size();
  Eigen::MatrixXd a(2 * n, 9);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector3d p = ti * Eigen::Vector3d(img_pts[i].x, img_pts[i].y, 1);
    const Eigen::Vector3d q =
        tw * Eigen::Vector3d(world_pts[i].x, world_pts[i].y, 1);
    a.row(2 * i) << 0, 0, 0, -p(0), -p(1), -1, q(1) * p(0), q(1) * p(1), q(1);
    a.row(2 * i + 1) << p(0), p(1), 1, 0, 0, 0, -q(0) * p(0), -q(0) * p(1),
        -q(0);
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::Matrix<double, 9, 1> hv = svd.matrixV().col(8);
  Eigen::Matrix3d hn;
  hn << hv(0), hv(1), hv(2), hv(3), hv(4), hv(5), hv(6), hv(7), hv(8);

  Calibration cal;
  cal.h = from_eigen(Eigen::Matrix3d(tw.inverse() * hn * ti));

  const Homography back = cal.h.inverse();
  double sq = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const geom::Vec2 reproj = back.apply(world_pts[i]);
    sq += (reproj - img_pts[i]).norm() * (reproj - img_pts[i]).norm();
  }
  cal.reproj_rms_px = std::sqrt(sq / n);
  return cal;
}

MappedObject map_to_floor(const Homography& h,
                          const detect::DetectionBox& box) {
  MappedObject out;
  out.source = box;
  out.floor_xy = h.apply({box.x + box.w / 2, box.y + box.h});
  return out;
}

int distance_cm(const MappedObject& a, const MappedObject& b) {
  return static_cast<int>(std::lround((a.floor_xy - b.floor_xy).norm() * 100));
}

geom::Vec2 relative_to(const MappedObject& obj, const geom::Vec2& cube_base) {
  return obj.floor_xy - cube_base;
}

TrackHistory update_tracks(TrackHistory history,
                           const std::vector<MappedObject>& mapped,
                           double max_assoc_dist) {
  if (max_assoc_dist < 0)
    throw std::invalid_argument("mapping: max_assoc_dist must be >= 0");
  std::vector<long> frames;
  for (const auto& m : mapped) frames.push_back(m.frame_index);
  std::sort(frames.begin(), frames.end());
  frames.erase(std::unique(frames.begin(), frames.end()), frames.end());

  for (const long frame : frames) {
    std::vector<const MappedObject*> dets;
    for (const auto& m : mapped)
      if (m.frame_index == frame) dets.push_back(&m);

    struct Pair {
      double dist;
      std::size_t track, det;
    };
    std::vector<Pair> pairs;
    for (std::size_t t = 0; t < history.tracks.size(); ++t) {
      const auto& track = history.tracks[t];
      if (!track.points.empty() && track.points.back().frame_index >= frame)
        continue;
      if (track.points.empty()) continue;
      for (std::size_t d = 0; d < dets.size(); ++d) {
        const double dist =
            (track.points.back().floor_xy - dets[d]->floor_xy).norm();
        if (dist <= max_assoc_dist) pairs.push_back({dist, t, d});
      }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      if (a.dist != b.dist) return a.dist < b.dist;
      if (a.track != b.track) return a.track < b.track;
      return a.det < b.det;
    });
    std::vector<char> track_used(history.tracks.size(), 0);
    std::vector<char> det_used(dets.size(), 0);
    for (const auto& p : pairs) {
      if (track_used[p.track] || det_used[p.det]) continue;
      track_used[p.track] = det_used[p.det] = 1;
      history.tracks[p.track].points.push_back({frame, dets[p.det]->floor_xy});
    }
    for (std::size_t d = 0; d < dets.size(); ++d) {
      if (det_used[d]) continue;
      Track t;
      t.track_id = static_cast<int>(history.tracks.size());
      t.points.push_back({frame, dets[d]->floor_xy});
      history.tracks.push_back(std::move(t));
    }
  }
  return history;
}

FloorMap to_floor_map(const TrackHistory& history, const geom::Vec2& min_xy,
                      const geom::Vec2& max_xy, double cell) {
  if (cell <= 0) throw std::invalid_argument("mapping: cell must be > 0");
  if (max_xy.x <= min_xy.x || max_xy.y <= min_xy.y)
    throw std::invalid_argument("mapping: empty floor extent");
  FloorMap map;
  map.origin = min_xy;
  map.cell = cell;
  map.width =
      std::max(1, static_cast<int>(std::ceil((max_xy.x - min_xy.x) / cell - 1e-9)));
  map.height =
      std::max(1, static_cast<int>(std::ceil((max_xy.y - min_xy.y) / cell - 1e-9)));
  map.counts.assign(static_cast<std::size_t>(map.width) * map.height, 0);
  for (const auto& track : history.tracks)
    for (const auto& pt : track.points) {
      const geom::Vec2& p = pt.floor_xy;
      if (p.x < min_xy.x || p.x > max_xy.x || p.y < min_xy.y ||
          p.y > max_xy.y)
        continue;
      const int cx = std::min(map.width - 1,
                              static_cast<int>((p.x - min_xy.x) / cell));
      const int cy = std::min(map.height - 1,
                              static_cast<int>((p.y - min_xy.y) / cell));
      ++map.counts[static_cast<std::size_t>(cy) * map.width + cx];
    }
  return map;
}

}  // namespace sentinel::mapping
