#include <doctest.h>

#include <cmath>

#include "tsurf/builders.hpp"
#include "tsurf/geometry.hpp"
#include "tsurf/surface_io.hpp"
#include "tsurf/triangulation.hpp"

using namespace tsurf;

TEST_CASE("unit torus splits into two triangles with max edge sqrt(2)") {
  const Triangulation t = delaunay_triangulate(build_torus({1, 0}, {0, 1}));
  CHECK(t.tris.size() == 2);
  CHECK(t.max_edge() == doctest::Approx(std::sqrt(2.0)));
  CHECK(delaunay_violations(t) == 0);
  CHECK(t.angle_sum(0) == doctest::Approx(2 * kPi));
}

TEST_CASE("sheared torus needs flips and still ends Delaunay") {
  const Triangulation t = delaunay_triangulate(build_torus({1, 0}, {0.7, 1}));
  CHECK(delaunay_violations(t) == 0);
  CHECK(t.angle_sum(0) == doctest::Approx(2 * kPi));
  // The longest Delaunay edge of a lattice is at most the sum of the two
  // reduced basis lengths; here those are (1,0) and (-0.3,1).
  CHECK(t.max_edge() < 1.0 + std::sqrt(0.3 * 0.3 + 1.0));
}

TEST_CASE("every builtin triangulates to a clean Delaunay complex") {
  for (const auto& name : builtin_surface_names()) {
    const TranslationSurface s = load_surface(name);
    const Triangulation t = delaunay_triangulate(s);
    CHECK(delaunay_violations(t) == 0);

    double area = 0;
    for (const auto& tr : t.tris) {
      const double a = cross(tr.p[1] - tr.p[0], tr.p[2] - tr.p[0]) / 2;
      CHECK(a > 0);
      area += a;
    }
    CHECK(area == doctest::Approx(s.total_area));

    // Angle sums reproduce each cone angle.
    for (size_t c = 0; c < s.classes.size(); ++c)
      CHECK(t.angle_sum(static_cast<int>(c)) ==
            doctest::Approx(s.classes[c].total_angle));

    // Neighbor tables are involutive and sides develop consistently.
    for (int i = 0; i < static_cast<int>(t.tris.size()); ++i)
      for (int k = 0; k < 3; ++k) {
        const auto& tr = t.tris[i];
        const int j = tr.nbr[k];
        const int js = tr.nbr_side[k];
        CHECK(t.tris[j].nbr[js] == i);
        CHECK(t.tris[j].nbr_side[js] == k);
        const Vec2 mine = tr.p[(k + 1) % 3] - tr.p[k];
        const Vec2 theirs =
            t.tris[j].p[(js + 1) % 3] - t.tris[j].p[js];
        CHECK(norm(mine + theirs) < 1e-9);  // antiparallel
      }
  }
}

TEST_CASE("octagon triangulation covers the cone point correctly") {
  const Triangulation t = delaunay_triangulate(load_surface("octagon"));
  CHECK(t.tris.size() == 6);  // 8-gon ear-clips into 6 triangles
  CHECK(t.angle_sum(0) == doctest::Approx(6 * kPi));
  CHECK(delaunay_violations(t) == 0);
}
