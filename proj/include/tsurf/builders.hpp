#pragma once

#include <vector>

#include "tsurf/surface.hpp"

namespace tsurf {

// Parallelogram torus spanned by (e1, e2) with opposite sides glued and one
// marked regular point at the vertex class. Requires det(e1, e2) > 0.
TranslationSurface build_torus(Vec2 e1, Vec2 e2);

// Square-tiled surface from two permutations over n squares (0-based images):
// square i's right edge glues to square h[i]'s left edge and its top edge to
// square v[i]'s bottom edge. Throws DisconnectedSurface when the permutation
// group is not transitive.
TranslationSurface build_square_tiled(const std::vector<int>& h_perm,
                                      const std::vector<int>& v_perm);

// Regular octagon with unit sides, opposite sides identified (genus 2).
TranslationSurface build_octagon();

struct BilliardTable {
  enum class Kind { rectangle, right_triangle } kind = Kind::rectangle;
  double a = 1.0, b = 1.0;  // rectangle sides
  int q = 8;                // right triangle with acute angle pi/q
  static BilliardTable rectangle(double a, double b);
  static BilliardTable right_triangle(int q);
};

// Unfolds a rational billiard table into a translation surface by applying
// the finite group generated by the edge reflections (one polygon copy per
// group element).
TranslationSurface unfold_billiard(const BilliardTable& table);

}  // namespace tsurf
