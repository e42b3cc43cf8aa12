#pragma once

#include <array>
#include <vector>

#include "tsurf/surface.hpp"

namespace tsurf {

// Geodesic triangulation of the flat surface with vertices at the cone /
// marked vertex classes. Each triangle lives in its own chart; side k runs
// p[k] -> p[(k+1)%3] and is glued to side nbr_side[k] of triangle nbr[k] by
// a translation.
struct Triangulation {
  struct Tri {
    std::array<Vec2, 3> p;  // counterclockwise
    std::array<int, 3> vclass;
    std::array<int, 3> nbr;
    std::array<int, 3> nbr_side;
  };
  std::vector<Tri> tris;
  int flips = 0;

  double max_edge() const;
  // Develops the apex of the neighbor across side (t, k) into t's chart.
  Vec2 opposite_apex(int t, int k) const;
  // Sum of triangle corner angles at a vertex class (should be the cone
  // angle).
  double angle_sum(int vclass) const;
};

// Intrinsic Delaunay triangulation: ear-clip each face, then flip edges that
// violate the empty-circumdisk test until none remain (budget 10^6, else
// NonTermination). Cocircular ties break toward the lexicographically
// smaller canonical diagonal vector, so the result is deterministic.
Triangulation delaunay_triangulate(const TranslationSurface& s);

// Audits: returns the number of edges violating the local Delaunay test at
// `slack` (relative tolerance on the incircle determinant).
int delaunay_violations(const Triangulation& t, double slack = 1e-7);

}  // namespace tsurf
