/// Shared 3-D primitives: vectors, axis-aligned boxes, pinhole camera poses.
/// World convention: y is up, the floor is the plane y = floor_height, and
/// yaw is measured in the x-z ground plane from +x toward +z. Pitch is
/// positive upward. Distances are metres.
#pragma once

#include <array>
#include <cmath>

namespace sentinel::geom {

struct Vec2 {
  double x = 0.0, y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double norm() const { return std::hypot(x, y); }
};

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const {
    double n = norm();
    return n > 0 ? Vec3{x / n, y / n, z / n} : Vec3{};
  }
};

/// Closed axis-aligned box.
struct Aabb {
  Vec3 min, max;

  bool contains(const Vec3& p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y &&
           p.z >= min.z && p.z <= max.z;
  }
  bool valid() const {
    return min.x <= max.x && min.y <= max.y && min.z <= max.z;
  }
};

/// Pinhole camera placement. hfov/vfov are full field-of-view angles.
struct CameraPose {
  Vec3 position;
  double yaw = 0.0;
  double pitch = 0.0;
  double hfov = 1.2;
  double vfov = 0.9;
  double max_range = 50.0;
};

/// Orthonormal camera basis derived from yaw/pitch.
struct CameraFrame {
  Vec3 forward, right, up;
};

inline CameraFrame camera_frame(const CameraPose& cam) {
  const double cy = std::cos(cam.yaw), sy = std::sin(cam.yaw);
  const double cp = std::cos(cam.pitch), sp = std::sin(cam.pitch);
  CameraFrame f;
  f.forward = {cp * cy, sp, cp * sy};
  f.right = {-sy, 0.0, cy};  // forward x world-up, unit by construction
  f.up = f.right.cross(f.forward);
  return f;
}

/// Segment-vs-box intersection by the slab method. Returns true when the
/// segment a->b touches the (closed) box anywhere strictly between its
/// endpoints or at them.
inline bool segment_hits_box(const Vec3& a, const Vec3& b, const Aabb& box) {
  const Vec3 d = b - a;
  double tmin = 0.0, tmax = 1.0;
  const std::array<double, 3> o{a.x, a.y, a.z};
  const std::array<double, 3> dir{d.x, d.y, d.z};
  const std::array<double, 3> lo{box.min.x, box.min.y, box.min.z};
  const std::array<double, 3> hi{box.max.x, box.max.y, box.max.z};
  for (int i = 0; i < 3; ++i) {
    if (std::abs(dir[i]) < 1e-15) {
      if (o[i] < lo[i] || o[i] > hi[i]) return false;
      continue;
    }
    double t0 = (lo[i] - o[i]) / dir[i];
    double t1 = (hi[i] - o[i]) / dir[i];
    if (t0 > t1) std::swap(t0, t1);
    tmin = std::max(tmin, t0);
    tmax = std::min(tmax, t1);
    if (tmin > tmax) return false;
  }
  return true;
}

}  // namespace sentinel::geom
