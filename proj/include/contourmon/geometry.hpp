#pragma once

#include <cmath>

namespace contourmon {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;

  constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
  /// Counter-clockwise rotation by 90 degrees.
  constexpr Vec2 perp() const { return {-y, x}; }
};

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

/// Axis-aligned monitoring area anchored at the origin: [0, width] x [0, height].
struct Area {
  double width = 100.0;
  double height = 100.0;

  constexpr bool contains(Vec2 p, double slack = 0.0) const {
    return p.x >= -slack && p.y >= -slack && p.x <= width + slack && p.y <= height + slack;
  }
  double diagonal() const { return std::hypot(width, height); }
  friend constexpr bool operator==(const Area&, const Area&) = default;
};

}  // namespace contourmon
