#include "tsurf/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace tsurf {

double angle_of(Vec2 v) {
  double a = std::atan2(v.y, v.x);
  if (a < 0) a += 2 * kPi;
  return a;
}

double ccw_angle(Vec2 from, Vec2 to) {
  double a = std::atan2(cross(from, to), dot(from, to));
  if (a < 0) a += 2 * kPi;
  return a;
}

double polygon_signed_area(const std::vector<Vec2>& p) {
  double s = 0.0;
  const int n = static_cast<int>(p.size());
  for (int i = 0; i < n; ++i) {
    const Vec2 a = p[i], b = p[(i + 1) % n];
    s += cross(a, b);
  }
  return 0.5 * s;
}

namespace {

// Proper intersection of open segments (a,b) and (c,d).
bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != d2 &&
         d3 != d4;
}

}  // namespace

bool polygon_is_simple(const std::vector<Vec2>& p) {
  const int n = static_cast<int>(p.size());
  if (n < 3) return false;
  for (int i = 0; i < n; ++i) {
    const Vec2 a = p[i], b = p[(i + 1) % n];
    if (dist(a, b) <= kGeomTol) return false;  // degenerate edge
    for (int j = i + 1; j < n; ++j) {
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_cross(a, b, p[j], p[(j + 1) % n])) return false;
    }
  }
  return true;
}

bool polygon_is_convex(const std::vector<Vec2>& p) {
  const int n = static_cast<int>(p.size());
  for (int i = 0; i < n; ++i) {
    const Vec2 a = p[i], b = p[(i + 1) % n], c = p[(i + 2) % n];
    if (cross(b - a, c - b) < -kGeomTol) return false;
  }
  return true;
}

double interior_angle(const std::vector<Vec2>& p, int i) {
  const int n = static_cast<int>(p.size());
  const Vec2 v = p[i];
  const Vec2 nxt = p[(i + 1) % n] - v;
  const Vec2 prv = p[(i - 1 + n) % n] - v;
  double a = std::atan2(cross(nxt, prv), dot(nxt, prv));
  if (a <= 0) a += 2 * kPi;
  return a;
}

double point_segment_distance(Vec2 q, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = norm2(ab);
  if (len2 == 0.0) return dist(q, a);
  double t = dot(q - a, ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return dist(q, a + t * ab);
}

double polygon_distance(Vec2 q, const std::vector<Vec2>& p) {
  if (point_in_polygon(q, p, 0.0)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(p.size());
  for (int i = 0; i < n; ++i)
    best = std::min(best, point_segment_distance(q, p[i], p[(i + 1) % n]));
  return best;
}

bool point_in_polygon(Vec2 q, const std::vector<Vec2>& p, double tol) {
  const int n = static_cast<int>(p.size());
  if (tol > 0) {
    for (int i = 0; i < n; ++i)
      if (point_segment_distance(q, p[i], p[(i + 1) % n]) <= tol) return true;
  }
  // Crossing count on a horizontal ray.
  bool inside = false;
  for (int i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = p[i], b = p[j];
    if ((a.y > q.y) != (b.y > q.y)) {
      const double xi = a.x + (q.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (q.x < xi) inside = !inside;
    }
  }
  if (inside) return true;
  if (tol == 0.0) {
    // Accept boundary points.
    for (int i = 0; i < n; ++i)
      if (point_segment_distance(q, p[i], p[(i + 1) % n]) <= kGeomTol)
        return true;
  }
  return false;
}

bool segment_in_polygon(Vec2 a, Vec2 b, const std::vector<Vec2>& p,
                        bool convex) {
  if (convex) return true;  // endpoints inside a convex face suffice
  const int n = static_cast<int>(p.size());
  for (int i = 0; i < n; ++i)
    if (segments_cross(a, b, p[i], p[(i + 1) % n])) return false;
  return point_in_polygon(0.5 * (a + b), p, kGeomTol);
}

std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& p) {
  const int n = static_cast<int>(p.size());
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::vector<std::array<int, 3>> tris;

  const double scale2 = std::abs(polygon_signed_area(p));
  const double eps = 1e-12 * std::max(scale2, 1e-30);

  auto point_in_tri = [&](Vec2 q, Vec2 a, Vec2 b, Vec2 c) {
    return cross(b - a, q - a) > -eps && cross(c - b, q - b) > -eps &&
           cross(a - c, q - c) > -eps;
  };

  int guard = 0;
  while (idx.size() > 3) {
    const int m = static_cast<int>(idx.size());
    bool clipped = false;
    for (int i = 0; i < m; ++i) {
      const int i0 = idx[(i - 1 + m) % m], i1 = idx[i], i2 = idx[(i + 1) % m];
      const Vec2 a = p[i0], b = p[i1], c = p[i2];
      if (cross(b - a, c - b) <= eps) continue;  // reflex or flat corner
      bool ear = true;
      for (int j : idx) {
        if (j == i0 || j == i1 || j == i2) continue;
        if (point_in_tri(p[j], a, b, c)) {
          ear = false;
          break;
        }
      }
      if (!ear) continue;
      tris.push_back({i0, i1, i2});
      idx.erase(idx.begin() + i);
      clipped = true;
      break;
    }
    if (!clipped || ++guard > 4 * n)
      throw std::runtime_error("ear_clip: polygon not clippable");
  }
  tris.push_back({idx[0], idx[1], idx[2]});
  return tris;
}

}  // namespace tsurf
