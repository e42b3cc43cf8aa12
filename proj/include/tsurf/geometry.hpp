#pragma once

#include <array>
#include <cmath>
#include <vector>

namespace tsurf {

// Shared geometric tolerances: lengths compare with kGeomTol (absolute),
// angles with kAngleTol (radians). Everything downstream inherits these two.
inline constexpr double kGeomTol = 1e-9;
inline constexpr double kAngleTol = 1e-9;
inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
  Vec2& operator+=(Vec2 b) {
    x += b.x;
    y += b.y;
    return *this;
  }
  Vec2& operator-=(Vec2 b) {
    x -= b.x;
    y -= b.y;
    return *this;
  }
  Vec2 operator-() const { return {-x, -y}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }  // rotate +90 degrees

// Row-major 2x2 matrix [[a b], [c d]].
struct Mat2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  Vec2 apply(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  double det() const { return a * d - b * c; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
            c * o.b + d * o.d};
  }
  static Mat2 identity() { return {}; }
  static Mat2 diag(double p, double q) { return {p, 0.0, 0.0, q}; }
  static Mat2 rotation(double theta) {
    const double co = std::cos(theta), si = std::sin(theta);
    return {co, -si, si, co};
  }
};

// Angle of v in [0, 2pi).
double angle_of(Vec2 v);
// Counterclockwise angle from `from` to `to`, in [0, 2pi).
double ccw_angle(Vec2 from, Vec2 to);

// Polygon helpers. Vertices are counterclockwise unless stated otherwise.
double polygon_signed_area(const std::vector<Vec2>& p);
bool polygon_is_simple(const std::vector<Vec2>& p);
bool polygon_is_convex(const std::vector<Vec2>& p);
// Interior angle at vertex i of a CCW simple polygon, in (0, 2pi).
double interior_angle(const std::vector<Vec2>& p, int i);
double point_segment_distance(Vec2 q, Vec2 a, Vec2 b);
// Distance from q to the polygon (0 if inside or on the boundary).
double polygon_distance(Vec2 q, const std::vector<Vec2>& p);
// True if q is inside p or within tol of its boundary.
bool point_in_polygon(Vec2 q, const std::vector<Vec2>& p, double tol);
// True if the open segment (a,b) stays inside the polygon. For convex faces
// this is just an endpoint check; `convex` skips the full test.
bool segment_in_polygon(Vec2 a, Vec2 b, const std::vector<Vec2>& p,
                        bool convex);
// Triangulate a simple CCW polygon into index triples.
std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& p);

}  // namespace tsurf
