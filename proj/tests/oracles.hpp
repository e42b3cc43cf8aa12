#pragma once

#include <vector>

#include "tsurf/flow.hpp"
#include "tsurf/geometry.hpp"

// Closed-form / brute-force reference computations, written independently of
// the library internals they are used to cross-check.
namespace oracle {

// Exact flat distance from q to the segment [a, b] on R^2 / (Z e1 + Z e2),
// minimized over lattice translates of q in a +-range window.
double torus_segment_distance(tsurf::Vec2 q, tsurf::Vec2 a, tsurf::Vec2 b,
                              tsurf::Vec2 e1, tsurf::Vec2 e2, int range = 2);

// Exact flat distance between two points of the same torus.
double torus_point_distance(tsurf::Vec2 p, tsurf::Vec2 q, tsurf::Vec2 e1,
                            tsurf::Vec2 e2, int range = 2);

// Covering radius (= diameter of the quotient torus) of the lattice spanned
// by e1 and e2: Gauss reduction, then the circumradius of the reduced basis
// triangle (0, u, v).
double lattice_covering_radius(tsurf::Vec2 e1, tsurf::Vec2 e2);

// Minimal prefix arc length after which every test point of an n x n
// cell-center grid lies within r of the chords (unit square torus). Per
// chord the first-touch parameter is solved exactly. Returns infinity when
// some point is never covered.
double cover_length_on_grid(const std::vector<tsurf::Chord>& chords, double r,
                            int n);

}  // namespace oracle
