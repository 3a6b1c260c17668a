// SPDX-License-Identifier: MIT
//
// Convex polygons with half-plane clipping, used to decompose the value
// square into best-response regions. Vertices are kept in counter-
// clockwise order without repeating the first vertex.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "menukit/common.hpp"

namespace menukit {

// Points closer than this to a clip line are treated as on the kept side,
// and output vertices closer than this are merged.
inline constexpr double kGeomTol = 1e-12;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct ConvexPolygon {
  std::vector<Vec2> v;

  [[nodiscard]] bool empty() const { return v.size() < 3; }
};

[[nodiscard]] inline ConvexPolygon make_rect(double x0, double y0, double x1,
                                             double y1) {
  require(x1 > x0 && y1 > y0, "make_rect: degenerate rectangle");
  return ConvexPolygon{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

[[nodiscard]] inline double area(const ConvexPolygon& p) {
  if (p.empty()) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < p.v.size(); ++i) {
    const Vec2& a = p.v[i];
    const Vec2& b = p.v[(i + 1) % p.v.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

// Intersects p with the half-plane {a x + b y >= c} (Sutherland-Hodgman).
// Slivers below kGeomTol width collapse to the empty polygon.
[[nodiscard]] inline ConvexPolygon clip(const ConvexPolygon& p, double a,
                                        double b, double c) {
  if (p.empty()) return {};
  ConvexPolygon out;
  const std::size_t n = p.v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& cur = p.v[i];
    const Vec2& nxt = p.v[(i + 1) % n];
    const double s_cur = a * cur.x + b * cur.y - c;
    const double s_nxt = a * nxt.x + b * nxt.y - c;
    const bool in_cur = s_cur >= -kGeomTol;
    const bool in_nxt = s_nxt >= -kGeomTol;
    if (in_cur) out.v.push_back(cur);
    if (in_cur != in_nxt) {
      const double denom = s_cur - s_nxt;
      if (std::abs(denom) > 0.0) {
        const double u = s_cur / denom;
        out.v.push_back({cur.x + u * (nxt.x - cur.x),
                         cur.y + u * (nxt.y - cur.y)});
      }
    }
  }
  // Merge vertices that coincide up to tolerance.
  ConvexPolygon merged;
  for (const Vec2& q : out.v) {
    if (!merged.v.empty()) {
      const Vec2& last = merged.v.back();
      if (std::abs(q.x - last.x) <= kGeomTol &&
          std::abs(q.y - last.y) <= kGeomTol)
        continue;
    }
    merged.v.push_back(q);
  }
  while (merged.v.size() >= 2 &&
         std::abs(merged.v.front().x - merged.v.back().x) <= kGeomTol &&
         std::abs(merged.v.front().y - merged.v.back().y) <= kGeomTol)
    merged.v.pop_back();
  if (merged.v.size() < 3 || std::abs(area(merged)) < 1e-18) return {};
  return merged;
}

}  // namespace menukit
