#include "sentinel/synth/synth.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "json.hpp"
#include "sentinel/core/error.hpp"
#include "sentinel/core/hash.hpp"
#include "sentinel/core/image_io.hpp"
#include "sentinel/imaging/color.hpp"

namespace sentinel::synth {

namespace {

using geom::Vec2;
using geom::Vec3;
using nlohmann::json;

constexpr double kNearClip = 0.05;
constexpr std::array<int, 3> kSky{10, 39, 60};        // saturated, class-free
constexpr std::array<int, 3> kBinBody{30, 150, 140};  // cyan, class-free
constexpr std::array<int, 3> kBinEmpty{70, 70, 70};
constexpr std::array<int, 3> kPuddle{120, 120, 120};
constexpr std::array<int, 3> kPerson{200, 40, 200};
constexpr std::array<int, 3> kWhite{235, 235, 235};
constexpr std::array<int, 3> kInk{20, 20, 20};

// same payload table the fiducial decoder ships; bit r*4+c = white
constexpr std::uint16_t kMarkerCodes[16] = {
    0x19a7, 0x352a, 0x4436, 0x5dae, 0x5e07, 0x61bf, 0x8127, 0x941b,
    0x95e2, 0x99ab, 0xc66d, 0xcc3f, 0xce87, 0xd1a3, 0xe503, 0xf013,
};

struct Projection {
  Vec3 pos;
  geom::CameraFrame frame;
  double fx, fy, cx, cy;

  Projection(const geom::CameraPose& cam, int w, int h)
      : pos(cam.position),
        frame(geom::camera_frame(cam)),
        fx((w / 2.0) / std::tan(cam.hfov / 2)),
        fy((h / 2.0) / std::tan(cam.vfov / 2)),
        cx(w / 2.0),
        cy(h / 2.0) {}

  // depth along forward; false behind the near clip
  bool project(const Vec3& p, Vec2& out, double& depth) const {
    const Vec3 d = p - pos;
    depth = d.dot(frame.forward);
    if (depth <= kNearClip) return false;
    out = {cx + fx * d.dot(frame.right) / depth,
           cy - fy * d.dot(frame.up) / depth};
    return true;
  }
};

struct PaintStats {
  int min_x = std::numeric_limits<int>::max();
  int min_y = std::numeric_limits<int>::max();
  int max_x = -1, max_y = -1;
  long count = 0;

  void add(int x, int y) {
    min_x = std::min(min_x, x);
    min_y = std::min(min_y, y);
    max_x = std::max(max_x, x);
    max_y = std::max(max_y, y);
    ++count;
  }
  bool any() const { return count > 0; }
};

struct Canvas {
  img::ImageBuffer& rgb;
  img::BinaryMask& stain;
  PaintStats* stats = nullptr;

  void put(int x, int y, const std::array<int, 3>& c, bool is_stain = false) {
    if (x < 0 || y < 0 || x >= rgb.width || y >= rgb.height) return;
    for (int ch = 0; ch < 3; ++ch)
      rgb.at(x, y, ch) = static_cast<std::uint8_t>(c[ch]);
    stain.set(x, y, is_stain);
    if (stats) stats->add(x, y);
  }
};

template <typename PixelFn>
void fill_polygon(const std::vector<Vec2>& poly, PixelFn&& px) {
  double miny = 1e18, maxy = -1e18;
  for (const auto& p : poly) {
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  const std::size_t n = poly.size();
  std::vector<double> xs;
  for (int iy = static_cast<int>(std::ceil(miny));
       iy <= static_cast<int>(std::floor(maxy)); ++iy) {
    xs.clear();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& a = poly[i];
      const Vec2& b = poly[(i + 1) % n];
      if ((a.y <= iy) != (b.y <= iy))
        xs.push_back(a.x + (iy - a.y) * (b.x - a.x) / (b.y - a.y));
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t j = 0; j + 1 < xs.size(); j += 2)
      for (int ix = static_cast<int>(std::ceil(xs[j]));
           ix <= static_cast<int>(std::floor(xs[j + 1])); ++ix)
        px(ix, iy);
  }
}

template <typename PixelFn>
void fill_ellipse(double cx, double cy, double rx, double ry, PixelFn&& px) {
  if (rx <= 0 || ry <= 0) return;
  for (int iy = static_cast<int>(std::ceil(cy - ry));
       iy <= static_cast<int>(std::floor(cy + ry)); ++iy) {
    const double t = (iy - cy) / ry;
    const double dx = rx * std::sqrt(std::max(0.0, 1.0 - t * t));
    for (int ix = static_cast<int>(std::ceil(cx - dx));
         ix <= static_cast<int>(std::floor(cx + dx)); ++ix)
      px(ix, iy);
  }
}

double cross2(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  if (pts.size() < 3) return pts;
  std::vector<Vec2> hull(2 * pts.size());
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
  return hull;
}

std::array<int, 3> scale_color(const std::array<int, 3>& c, double k) {
  std::array<int, 3> out;
  for (int i = 0; i < 3; ++i)
    out[i] = std::clamp(static_cast<int>(std::lround(c[i] * k)), 0, 255);
  return out;
}

std::array<int, 3> lerp_color(const std::array<int, 3>& a,
                              const std::array<int, 3>& b, double t) {
  std::array<int, 3> out;
  for (int i = 0; i < 3; ++i)
    out[i] = static_cast<int>(std::lround(a[i] + (b[i] - a[i]) * t));
  return out;
}

// Reference-detector class for a solid color, -1 when no class matches.
int palette_class(const std::array<int, 3>& rgb) {
  img::ImageBuffer px = img::ImageBuffer::make(1, 1, 3);
  for (int i = 0; i < 3; ++i) px.data[i] = static_cast<std::uint8_t>(rgb[i]);
  const img::ImageBuffer hsv = img::rgb_to_hsv(px);
  const int h = hsv.data[0], s = hsv.data[1], v = hsv.data[2];
  if (s < 120 || v < 60) return -1;
  const auto hue_near = [h](int center, int tol) {
    const int d = std::abs(h - center);
    return std::min(d, 256 - d) <= tol;
  };
  if (hue_near(0, 12)) return 0;
  if (hue_near(85, 12)) return 1;
  if (hue_near(170, 12)) return 2;
  if (hue_near(213, 10)) return 3;
  return -1;
}

Vec2 item_pos(const SceneItem& item, int frame) {
  return item.pos + item.velocity * static_cast<double>(frame);
}

// 64-gon of the horizontal circle (center, radius) at height y.
std::vector<Vec3> circle_points(const Vec2& center, double radius, double y) {
  std::vector<Vec3> pts;
  pts.reserve(64);
  for (int i = 0; i < 64; ++i) {
    const double a = 2 * 3.14159265358979323846 * i / 64;
    pts.push_back(
        {center.x + radius * std::cos(a), y, center.y + radius * std::sin(a)});
  }
  return pts;
}

bool project_all(const Projection& proj, const std::vector<Vec3>& pts,
                 std::vector<Vec2>& out) {
  out.clear();
  for (const auto& p : pts) {
    Vec2 q;
    double depth;
    if (!proj.project(p, q, depth)) return false;
    out.push_back(q);
  }
  return true;
}

bool polygon_on_screen(const std::vector<Vec2>& poly, int w, int h) {
  double minx = 1e18, maxx = -1e18, miny = 1e18, maxy = -1e18;
  for (const auto& p : poly) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  return maxx >= 0 && maxy >= 0 && minx < w && miny < h;
}

// Solve the 4-point homography src -> dst (both quads, matching order).
Eigen::Matrix3d quad_homography(const std::array<Vec2, 4>& src,
                                const std::array<Vec2, 4>& dst) {
  Eigen::Matrix<double, 8, 8> a = Eigen::Matrix<double, 8, 8>::Zero();
  Eigen::Matrix<double, 8, 1> b;
  for (int i = 0; i < 4; ++i) {
    const double u = src[i].x, v = src[i].y;
    const double x = dst[i].x, y = dst[i].y;
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

json rect_json(const img::Rect& r) { return json::array({r.x, r.y, r.w, r.h}); }

}  // namespace

std::string to_string(ItemKind kind) {
  switch (kind) {
    case ItemKind::LitterBlob: return "litter_blob";
    case ItemKind::Bin: return "bin";
    case ItemKind::Puddle: return "puddle";
    case ItemKind::PersonSilhouette: return "person_silhouette";
    case ItemKind::MarkerCube: return "marker_cube";
  }
  return "?";
}

ItemKind item_kind_from_string(const std::string& name) {
  if (name == "litter_blob") return ItemKind::LitterBlob;
  if (name == "bin") return ItemKind::Bin;
  if (name == "puddle") return ItemKind::Puddle;
  if (name == "person_silhouette") return ItemKind::PersonSilhouette;
  if (name == "marker_cube") return ItemKind::MarkerCube;
  throw ConfigError("scene: unknown item kind \"" + name + "\"");
}

SceneSpec load_scene_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("scene: cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  try {
    SceneSpec spec;
    if (doc.contains("floor")) {
      const auto& f = doc["floor"];
      if (f.contains("rgb")) spec.floor.rgb = f["rgb"].get<std::array<int, 3>>();
      spec.floor.texture_amp = f.value("texture_amp", spec.floor.texture_amp);
      spec.floor.tile = f.value("tile", spec.floor.tile);
    }
    spec.noise_amp = doc.value("noise_amp", 0.0);
    if (doc.contains("camera")) {
      const auto& c = doc["camera"];
      if (c.contains("position")) {
        const auto p = c["position"].get<std::array<double, 3>>();
        spec.camera.position = {p[0], p[1], p[2]};
      }
      spec.camera.yaw = c.value("yaw", 0.0);
      spec.camera.pitch = c.value("pitch", 0.0);
      spec.camera.hfov = c.value("hfov", spec.camera.hfov);
      spec.camera.vfov = c.value("vfov", spec.camera.vfov);
      if (c.contains("resolution")) {
        const auto r = c["resolution"].get<std::array<int, 2>>();
        spec.width = r[0];
        spec.height = r[1];
      }
    }
    if (doc.contains("bounds")) {
      const auto mn = doc["bounds"]["min"].get<std::array<double, 2>>();
      const auto mx = doc["bounds"]["max"].get<std::array<double, 2>>();
      spec.bounds_min = Vec2{mn[0], mn[1]};
      spec.bounds_max = Vec2{mx[0], mx[1]};
    }
    for (const auto& it : doc.value("items", json::array())) {
      SceneItem item;
      item.kind = item_kind_from_string(it.at("kind").get<std::string>());
      const auto p = it.at("pos").get<std::array<double, 2>>();
      item.pos = {p[0], p[1]};
      if (it.contains("velocity")) {
        const auto v = it["velocity"].get<std::array<double, 2>>();
        item.velocity = {v[0], v[1]};
      }
      item.size = it.value("size", item.size);
      item.height = it.value("height", item.height);
      if (it.contains("rgb")) item.rgb = it["rgb"].get<std::array<int, 3>>();
      if (it.contains("color")) {
        const std::string c = it["color"].get<std::string>();
        if (c == "red")
          item.rgb = {200, 30, 30};
        else if (c == "green")
          item.rgb = {30, 200, 30};
        else if (c == "blue")
          item.rgb = {30, 30, 200};
        else
          throw ConfigError("scene: unknown color name \"" + c + "\"");
      }
      item.full = it.value("full", false);
      if (it.contains("occluded_arc"))
        item.occluded_arc = it["occluded_arc"].get<std::array<double, 2>>();
      item.marker_id = it.value("id", 0);
      if (item.marker_id < 0 || item.marker_id > 15)
        throw ConfigError("scene: marker id must be in 0..15");
      if (it.contains("facing")) item.facing = it["facing"].get<double>();
      if (item.size <= 0) throw ConfigError("scene: item size must be > 0");
      if (spec.bounds_min &&
          (item.pos.x < spec.bounds_min->x || item.pos.y < spec.bounds_min->y ||
           item.pos.x > spec.bounds_max->x || item.pos.y > spec.bounds_max->y))
        throw ConfigError("scene: item at (" + std::to_string(item.pos.x) +
                          ", " + std::to_string(item.pos.y) +
                          ") lies outside the scene bounds");
      spec.items.push_back(item);
    }
    if (spec.width < 16 || spec.height < 16)
      throw ConfigError("scene: resolution must be at least 16x16");
    return spec;
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

mapping::Homography floor_homography(const geom::CameraPose& camera, int width,
                                     int height) {
  const Projection proj(camera, width, height);
  const auto& f = proj.frame;
  const Vec3& c = camera.position;
  Eigen::Matrix3d m;
  const Eigen::RowVector3d r3(f.forward.x, f.forward.z, -c.dot(f.forward));
  const Eigen::RowVector3d rr(f.right.x, f.right.z, -c.dot(f.right));
  const Eigen::RowVector3d ru(f.up.x, f.up.z, -c.dot(f.up));
  m.row(0) = proj.cx * r3 + proj.fx * rr;
  m.row(1) = proj.cy * r3 - proj.fy * ru;
  m.row(2) = r3;
  if (std::abs(m.determinant()) < 1e-12)
    throw Error("synth: camera does not see the floor plane");
  const Eigen::Matrix3d inv = m.inverse();
  if (std::abs(inv(2, 2)) < 1e-12 * inv.cwiseAbs().maxCoeff())
    throw Error("synth: floor homography cannot be normalized");
  mapping::Homography h;
  for (int r = 0; r < 3; ++r)
    for (int col = 0; col < 3; ++col) h.m[r * 3 + col] = inv(r, col) / inv(2, 2);
  return h;
}

namespace {

void render_floor(const SceneSpec& spec, const Projection& proj,
                  std::uint64_t seed, Canvas& canvas) {
  const std::uint64_t tex_seed = hash_combine(seed, 0x466c6f6f72ull);
  const auto& f = proj.frame;
  for (int iy = 0; iy < spec.height; ++iy)
    for (int ix = 0; ix < spec.width; ++ix) {
      const double tx = (ix - proj.cx) / proj.fx;
      const double ty = (proj.cy - iy) / proj.fy;
      const Vec3 dir = f.forward + f.right * tx + f.up * ty;
      if (dir.y >= -1e-9) {
        canvas.put(ix, iy, kSky);
        continue;
      }
      const double t = -proj.pos.y / dir.y;
      if (t <= 0 || t > 2000) {
        canvas.put(ix, iy, kSky);
        continue;
      }
      const double wx = proj.pos.x + dir.x * t;
      const double wz = proj.pos.z + dir.z * t;
      const auto cell_x = static_cast<std::int64_t>(std::floor(wx / spec.floor.tile));
      const auto cell_z = static_cast<std::int64_t>(std::floor(wz / spec.floor.tile));
      const double u = hash_unit(hash_combine(
          hash_combine(tex_seed, static_cast<std::uint64_t>(cell_x)),
          static_cast<std::uint64_t>(cell_z)));
      const double k = 1.0 + spec.floor.texture_amp * (2 * u - 1) / 255.0;
      canvas.put(ix, iy, scale_color(spec.floor.rgb, k));
    }
}

void record_off_screen(const SceneItem& item, FrameTruth& truth) {
  TrueBox box;
  box.kind = item.kind;
  box.off_screen = true;
  box.class_id = item.kind == ItemKind::PersonSilhouette
                     ? 3
                     : (item.kind == ItemKind::LitterBlob
                            ? palette_class(item.rgb)
                            : -1);
  truth.boxes.push_back(box);
  truth.warnings.push_back("item " + to_string(item.kind) +
                           " is outside the camera frustum");
}

void finish_box(const PaintStats& st, const SceneItem& item, int class_id,
                FrameTruth& truth) {
  TrueBox box;
  box.kind = item.kind;
  box.class_id = class_id;
  if (st.any()) {
    box.x = st.min_x;
    box.y = st.min_y;
    box.w = st.max_x - st.min_x + 1;
    box.h = st.max_y - st.min_y + 1;
    box.pixel_area = st.count;
    truth.boxes.push_back(box);
  } else {
    box.off_screen = true;
    truth.boxes.push_back(box);
    truth.warnings.push_back("item " + to_string(item.kind) +
                             " projects outside the frame");
  }
}

void render_litter(const SceneItem& item, int frame, const Projection& proj,
                   Canvas& canvas, FrameTruth& truth) {
  const Vec2 p = item_pos(item, frame);
  const double r = item.size / 2;
  Vec2 center;
  double depth;
  if (!proj.project({p.x, r, p.y}, center, depth)) {
    record_off_screen(item, truth);
    return;
  }
  const double rx = proj.fx * r / depth, ry = proj.fy * r / depth;
  PaintStats st;
  canvas.stats = &st;
  fill_ellipse(center.x, center.y, rx, ry,
               [&](int x, int y) { canvas.put(x, y, item.rgb); });
  canvas.stats = nullptr;
  if (!st.any() && (center.x < -rx || center.x >= canvas.rgb.width + rx ||
                    center.y < -ry || center.y >= canvas.rgb.height + ry)) {
    record_off_screen(item, truth);
    return;
  }
  finish_box(st, item, palette_class(item.rgb), truth);
}

void render_puddle(const SceneItem& item, int frame, const Projection& proj,
                   Canvas& canvas, FrameTruth& truth) {
  const Vec2 p = item_pos(item, frame);
  std::vector<Vec2> poly;
  if (!project_all(proj, circle_points(p, item.size / 2, 0.0), poly) ||
      !polygon_on_screen(poly, canvas.rgb.width, canvas.rgb.height)) {
    record_off_screen(item, truth);
    return;
  }
  fill_polygon(poly,
               [&](int x, int y) { canvas.put(x, y, kPuddle, true); });
}

void render_person(const SceneItem& item, int frame, const Projection& proj,
                   Canvas& canvas, FrameTruth& truth) {
  const Vec2 p = item_pos(item, frame);
  Vec2 bottom, top;
  double d0, d1;
  if (!proj.project({p.x, 0, p.y}, bottom, d0) ||
      !proj.project({p.x, item.height, p.y}, top, d1)) {
    record_off_screen(item, truth);
    return;
  }
  const double w0 = proj.fx * (item.size / 2) / d0;
  const double w1 = proj.fx * (item.size / 2) / d1;
  const std::vector<Vec2> quad = {{bottom.x - w0, bottom.y},
                                  {bottom.x + w0, bottom.y},
                                  {top.x + w1, top.y},
                                  {top.x - w1, top.y}};
  if (!polygon_on_screen(quad, canvas.rgb.width, canvas.rgb.height)) {
    record_off_screen(item, truth);
    return;
  }
  PaintStats st;
  canvas.stats = &st;
  fill_polygon(quad, [&](int x, int y) { canvas.put(x, y, kPerson); });
  canvas.stats = nullptr;
  finish_box(st, item, 3, truth);
  if (st.any()) truth.floor_positions.push_back(p);
}

void render_bin(const SceneItem& item, std::size_t item_index, int frame,
                const Projection& proj, std::uint64_t seed, Canvas& canvas,
                FrameTruth& truth) {
  const Vec2 p = item_pos(item, frame);
  const double radius = item.size / 2;
  const double rim_h = item.size * 0.9;
  std::vector<Vec2> top, bottom;
  if (!project_all(proj, circle_points(p, radius, rim_h), top) ||
      !project_all(proj, circle_points(p, radius, 0.0), bottom) ||
      !polygon_on_screen(top, canvas.rgb.width, canvas.rgb.height)) {
    record_off_screen(item, truth);
    return;
  }

  std::vector<Vec2> silhouette = bottom;
  silhouette.insert(silhouette.end(), top.begin(), top.end());
  fill_polygon(convex_hull(std::move(silhouette)),
               [&](int x, int y) { canvas.put(x, y, kBinBody); });

  // interior: rim lip stays body-colored, inside is flat or cluttered
  Vec2 c{0, 0};
  for (const auto& q : top) c = c + q;
  c = c * (1.0 / top.size());
  std::vector<Vec2> inner;
  inner.reserve(top.size());
  for (const auto& q : top) inner.push_back(c + (q - c) * 0.88);
  const std::uint64_t clutter_seed =
      hash_combine(hash_combine(seed, 0xb1b1ull), item_index);
  const std::array<int, 3> palette[4] = {
      {200, 130, 60}, {80, 80, 80}, {220, 220, 220}, {160, 60, 40}};
  fill_polygon(inner, [&](int x, int y) {
    if (!item.full) {
      canvas.put(x, y, kBinEmpty);
      return;
    }
    const std::uint64_t h = hash_combine(
        hash_combine(clutter_seed, static_cast<std::uint64_t>(x / 6)),
        static_cast<std::uint64_t>(y / 6));
    canvas.put(x, y, palette[h % 4]);
  });

  // hidden rim arc: replace the saturation step by a shallow radial ramp
  // (draped contents), leaving no edge for the detector to latch onto
  if (item.occluded_arc[1] > item.occluded_arc[0]) {
    const int rings = 12;
    for (int ring = 0; ring < rings; ++ring) {
      const double r0 = radius * (0.80 + 0.24 * ring / rings);
      const double r1 = radius * (0.80 + 0.24 * (ring + 1) / rings);
      const auto color = lerp_color(item.full ? palette[1] : kBinEmpty,
                                    kBinBody, (ring + 0.5) / rings);
      const int segs = 24;
      for (int s = 0; s < segs; ++s) {
        const double a0 = item.occluded_arc[0] +
                          (item.occluded_arc[1] - item.occluded_arc[0]) * s / segs;
        const double a1 = item.occluded_arc[0] +
                          (item.occluded_arc[1] - item.occluded_arc[0]) *
                              (s + 1) / segs;
        std::vector<Vec3> ring_pts = {
            {p.x + r0 * std::cos(a0), rim_h, p.y + r0 * std::sin(a0)},
            {p.x + r1 * std::cos(a0), rim_h, p.y + r1 * std::sin(a0)},
            {p.x + r1 * std::cos(a1), rim_h, p.y + r1 * std::sin(a1)},
            {p.x + r0 * std::cos(a1), rim_h, p.y + r0 * std::sin(a1)}};
        std::vector<Vec2> quad;
        if (!project_all(proj, ring_pts, quad)) continue;
        fill_polygon(quad, [&](int x, int y) { canvas.put(x, y, color); });
      }
    }
  }

  double minx = 1e18, maxx = -1e18, miny = 1e18, maxy = -1e18;
  for (const auto& q : top) {
    minx = std::min(minx, q.x);
    maxx = std::max(maxx, q.x);
    miny = std::min(miny, q.y);
    maxy = std::max(maxy, q.y);
  }
  const int pad_x = static_cast<int>(0.3 * (maxx - minx)) + 8;
  const int pad_y = static_cast<int>(0.3 * (maxy - miny)) + 8;
  img::Rect roi;
  roi.x = std::max(0, static_cast<int>(minx) - pad_x);
  roi.y = std::max(0, static_cast<int>(miny) - pad_y);
  roi.w = std::min(canvas.rgb.width, static_cast<int>(maxx) + pad_x + 1) - roi.x;
  roi.h = std::min(canvas.rgb.height, static_cast<int>(maxy) + pad_y + 1) - roi.y;
  if (roi.w < 32 || roi.h < 32) {
    truth.warnings.push_back("bin view too small for an ROI");
    return;
  }
  truth.bin_rois.push_back(roi);
  truth.bin_states.push_back(item.full ? bins::BinState::Full
                                       : bins::BinState::Empty);
}

void render_marker_cube(const SceneItem& item, int frame,
                        const Projection& proj, Canvas& canvas,
                        FrameTruth& truth) {
  const Vec2 p = item_pos(item, frame);
  const double s = item.size;
  const double yaw = item.facing
                         ? *item.facing
                         : std::atan2(proj.pos.z - p.y, proj.pos.x - p.x);
  const Vec3 n{std::cos(yaw), 0, std::sin(yaw)};
  const Vec3 t{-std::sin(yaw), 0, std::cos(yaw)};
  const Vec3 base{p.x, 0, p.y};
  const Vec3 face_mid = base + n * (s / 2);

  const Vec3 bl = face_mid - t * (s / 2);
  const Vec3 br = face_mid + t * (s / 2);
  const Vec3 tl = bl + Vec3{0, s, 0};
  const Vec3 tr = br + Vec3{0, s, 0};

  std::vector<Vec2> face_px, top_px;
  const std::vector<Vec3> face_w = {bl, br, tr, tl};
  const std::vector<Vec3> top_w = {tl, tr, base + (n * (-0.5 * s)) + t * (s / 2) + Vec3{0, s, 0},
                                   base + (n * (-0.5 * s)) - t * (s / 2) + Vec3{0, s, 0}};
  if (!project_all(proj, face_w, face_px) ||
      !polygon_on_screen(face_px, canvas.rgb.width, canvas.rgb.height)) {
    record_off_screen(item, truth);
    return;
  }
  if (project_all(proj, top_w, top_px))
    fill_polygon(top_px, [&](int x, int y) { canvas.put(x, y, kWhite); });

  // face coords: a rightward from the bottom-left corner (seen from
  // outside), b upward; the printed pattern sits bottom-flush, centered
  const std::array<Vec2, 4> img_quad{face_px[0], face_px[1], face_px[2],
                                     face_px[3]};
  const std::array<Vec2, 4> face_quad{Vec2{0, 0}, Vec2{s, 0}, Vec2{s, s},
                                      Vec2{0, s}};
  const Eigen::Matrix3d img2face = quad_homography(img_quad, face_quad);
  const double m = 0.7 * s;
  const double cell = m / 6;
  const double x0 = (s - m) / 2;
  const std::uint16_t code = kMarkerCodes[item.marker_id];
  std::vector<Vec2> face_poly(face_px.begin(), face_px.end());
  fill_polygon(face_poly, [&](int x, int y) {
    const Eigen::Vector3d q = img2face * Eigen::Vector3d(x, y, 1);
    const double a = q(0) / q(2), b = q(1) / q(2);
    std::array<int, 3> color = kWhite;
    if (a >= x0 && a < x0 + m && b >= 0 && b < m) {
      const int col = std::clamp(static_cast<int>((a - x0) / cell), 0, 5);
      const int row = std::clamp(5 - static_cast<int>(b / cell), 0, 5);
      const bool border = row == 0 || row == 5 || col == 0 || col == 5;
      const bool white =
          !border && (code >> ((row - 1) * 4 + (col - 1)) & 1);
      color = white ? kWhite : kInk;
    }
    canvas.put(x, y, color);
  });

  truth.markers.push_back({item.marker_id, Vec2{face_mid.x, face_mid.z}});
}

void apply_noise(const SceneSpec& spec, int frame, std::uint64_t seed,
                 img::ImageBuffer& rgb) {
  if (spec.noise_amp <= 0) return;
  const std::uint64_t base =
      hash_combine(hash_combine(seed, 0x6e6f6973ull), static_cast<std::uint64_t>(frame));
  for (int y = 0; y < rgb.height; ++y)
    for (int x = 0; x < rgb.width; ++x) {
      const double u = hash_unit(hash_combine(
          hash_combine(base, static_cast<std::uint64_t>(x)),
          static_cast<std::uint64_t>(y)));
      const double k = 1.0 + spec.noise_amp * (2 * u - 1) / 255.0;
      for (int c = 0; c < 3; ++c) {
        const int v = static_cast<int>(std::lround(rgb.at(x, y, c) * k));
        rgb.at(x, y, c) = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
      }
    }
}

}  // namespace

img::ImageBuffer render_frame(const SceneSpec& spec, int frame,
                              std::uint64_t seed, FrameTruth& truth) {
  truth = FrameTruth{};
  truth.frame = frame;
  truth.stain_mask = img::BinaryMask::make(spec.width, spec.height);
  img::ImageBuffer rgb = img::ImageBuffer::make(spec.width, spec.height, 3);
  Canvas canvas{rgb, truth.stain_mask, nullptr};
  const Projection proj(spec.camera, spec.width, spec.height);

  render_floor(spec, proj, seed, canvas);

  // painter's order: far items first, by forward depth of the base point
  std::vector<std::size_t> order(spec.items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Vec2 pa = item_pos(spec.items[a], frame);
    const Vec2 pb = item_pos(spec.items[b], frame);
    const auto depth = [&](const Vec2& q) {
      return (Vec3{q.x, 0, q.y} - proj.pos).dot(proj.frame.forward);
    };
    return depth(pa) > depth(pb);
  });

  for (const std::size_t i : order) {
    const SceneItem& item = spec.items[i];
    switch (item.kind) {
      case ItemKind::LitterBlob:
        render_litter(item, frame, proj, canvas, truth);
        break;
      case ItemKind::Puddle:
        render_puddle(item, frame, proj, canvas, truth);
        break;
      case ItemKind::PersonSilhouette:
        render_person(item, frame, proj, canvas, truth);
        break;
      case ItemKind::Bin:
        render_bin(item, i, frame, proj, seed, canvas, truth);
        break;
      case ItemKind::MarkerCube:
        render_marker_cube(item, frame, proj, canvas, truth);
        break;
    }
  }

  apply_noise(spec, frame, seed, rgb);
  return rgb;
}

SynthResult synthesize(const SceneSpec& spec, int frames, std::uint64_t seed,
                       const std::string& out_dir) {
  if (frames < 1) throw std::invalid_argument("synth: frames must be >= 1");
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  SynthResult result;
  result.manifest_file = "manifest.jsonl";
  std::ofstream manifest(fs::path(out_dir) / result.manifest_file,
                         std::ios::binary);
  if (!manifest) throw IoError("synth: cannot write manifest in " + out_dir);

  for (int f = 0; f < frames; ++f) {
    FrameTruth truth;
    const img::ImageBuffer rgb = render_frame(spec, f, seed, truth);
    char name[32], mask_name[32];
    std::snprintf(name, sizeof name, "frame_%05d.png", f);
    std::snprintf(mask_name, sizeof mask_name, "stain_%05d.pgm", f);
    img::write_png((fs::path(out_dir) / name).string(), rgb);
    img::write_mask_pgm((fs::path(out_dir) / mask_name).string(),
                        truth.stain_mask);
    result.frame_files.push_back(name);

    json line;
    line["format_version"] = 1;
    line["frame"] = f;
    line["file"] = name;
    line["stain_mask"] = mask_name;
    json boxes = json::array();
    for (const auto& b : truth.boxes)
      boxes.push_back({{"x", b.x},
                       {"y", b.y},
                       {"w", b.w},
                       {"h", b.h},
                       {"class_id", b.class_id},
                       {"kind", to_string(b.kind)},
                       {"off_screen", b.off_screen},
                       {"pixel_area", b.pixel_area}});
    line["boxes"] = boxes;
    json rois = json::array();
    for (const auto& r : truth.bin_rois) rois.push_back(rect_json(r));
    line["bin_rois"] = rois;
    json states = json::array();
    for (const auto& s : truth.bin_states) states.push_back(bins::to_string(s));
    line["bin_states"] = states;
    json positions = json::array();
    for (const auto& q : truth.floor_positions)
      positions.push_back({q.x, q.y});
    line["floor_positions"] = positions;
    json markers = json::array();
    for (const auto& [id, anchor] : truth.markers)
      markers.push_back({{"id", id}, {"x", anchor.x}, {"z", anchor.y}});
    line["markers"] = markers;
    line["warnings"] = truth.warnings;
    manifest << line.dump() << "\n";
    for (const auto& w : truth.warnings)
      result.warnings.push_back("frame " + std::to_string(f) + ": " + w);
  }
  manifest.close();

  try {
    const mapping::Homography h =
        floor_homography(spec.camera, spec.width, spec.height);
    json hj;
    hj["format_version"] = 1;
    hj["h"] = {{h.m[0], h.m[1], h.m[2]},
               {h.m[3], h.m[4], h.m[5]},
               {h.m[6], h.m[7], h.m[8]}};
    std::ofstream hf(fs::path(out_dir) / "homography.json", std::ios::binary);
    hf << hj.dump(2) << "\n";
    result.homography_file = "homography.json";
  } catch (const Error& e) {
    result.warnings.push_back(std::string("homography skipped: ") + e.what());
  }
  return result;
}

}  // namespace sentinel::synth
