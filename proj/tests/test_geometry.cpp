#include <doctest.h>

#include <cmath>
#include <vector>

#include "tsurf/geometry.hpp"

using namespace tsurf;

TEST_CASE("vector algebra basics") {
  const Vec2 a{3, 4}, b{-1, 2};
  CHECK(dot(a, b) == doctest::Approx(5.0));
  CHECK(cross(a, b) == doctest::Approx(10.0));
  CHECK(norm(a) == doctest::Approx(5.0));
  CHECK(dist(a, b) == doctest::Approx(std::sqrt(16.0 + 4.0)));
  CHECK(cross(perp(a), a) < 0);  // perp rotates +90 degrees
  CHECK(dot(perp(a), a) == doctest::Approx(0.0));
}

TEST_CASE("matrix action and composition") {
  const Mat2 g = Mat2::diag(std::exp(1.0), std::exp(-1.0));
  const Vec2 v{2, 3};
  CHECK(g.apply(v).x == doctest::Approx(2 * std::exp(1.0)));
  CHECK(g.apply(v).y == doctest::Approx(3 * std::exp(-1.0)));
  CHECK(g.det() == doctest::Approx(1.0));

  const Mat2 r = Mat2::rotation(kPi / 2);
  const Vec2 e = r.apply({1, 0});
  CHECK(e.x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(e.y == doctest::Approx(1.0));

  const Mat2 id = Mat2::identity();
  const Mat2 comp = r * id;
  CHECK(comp.apply({1, 0}).y == doctest::Approx(1.0));
}

TEST_CASE("ccw_angle wraps into [0, 2pi)") {
  CHECK(ccw_angle({1, 0}, {0, 1}) == doctest::Approx(kPi / 2));
  CHECK(ccw_angle({0, 1}, {1, 0}) == doctest::Approx(3 * kPi / 2));
  CHECK(ccw_angle({1, 0}, {1, 0}) == doctest::Approx(0.0));
  CHECK(ccw_angle({1, 1}, {-1, -1}) == doctest::Approx(kPi));
}

TEST_CASE("polygon predicates on a square and an L") {
  const std::vector<Vec2> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(polygon_signed_area(sq) == doctest::Approx(1.0));
  CHECK(polygon_is_simple(sq));
  CHECK(polygon_is_convex(sq));
  CHECK(interior_angle(sq, 0) == doctest::Approx(kPi / 2));

  const std::vector<Vec2> ell{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
  CHECK(polygon_signed_area(ell) == doctest::Approx(3.0));
  CHECK(polygon_is_simple(ell));
  CHECK_FALSE(polygon_is_convex(ell));
  CHECK(interior_angle(ell, 3) == doctest::Approx(3 * kPi / 2));  // reflex

  const std::vector<Vec2> bow{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  CHECK_FALSE(polygon_is_simple(bow));
}

TEST_CASE("point and segment membership") {
  const std::vector<Vec2> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(point_in_polygon({0.5, 0.5}, sq, 0.0));
  CHECK_FALSE(point_in_polygon({1.5, 0.5}, sq, 0.0));
  CHECK(point_in_polygon({1.0 + 1e-12, 0.5}, sq, 1e-9));

  CHECK(point_segment_distance({0.5, 1.0}, {0, 0}, {1, 0}) ==
        doctest::Approx(1.0));
  CHECK(point_segment_distance({2.0, 0.0}, {0, 0}, {1, 0}) ==
        doctest::Approx(1.0));
  CHECK(polygon_distance({0.5, 0.5}, sq) == 0.0);  // interior: in the region
  CHECK(polygon_distance({2.0, 0.5}, sq) == doctest::Approx(1.0));
  CHECK(polygon_distance({2.0, 2.0}, sq) == doctest::Approx(std::sqrt(2.0)));

  const std::vector<Vec2> ell{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
  CHECK(segment_in_polygon({0.5, 0.5}, {1.5, 0.5}, ell, false));
  CHECK_FALSE(segment_in_polygon({0.5, 1.5}, {1.5, 0.5}, ell, false));
}

TEST_CASE("ear clipping triangulates simple polygons") {
  const std::vector<Vec2> ell{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
  const auto tris = ear_clip(ell);
  CHECK(tris.size() == ell.size() - 2);
  double area = 0;
  for (const auto& t : tris) {
    const std::vector<Vec2> tri{ell[t[0]], ell[t[1]], ell[t[2]]};
    const double a = polygon_signed_area(tri);
    CHECK(a > 0);  // orientation preserved
    area += a;
  }
  CHECK(area == doctest::Approx(3.0));
}
