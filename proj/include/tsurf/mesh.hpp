#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tsurf/flow.hpp"
#include "tsurf/surface.hpp"

namespace tsurf {

// Weighted graph sampling the flat metric at spacing h: cell-centered grid
// nodes per face, edge samples at spacing h/2 merged across gluings, and one
// node per vertex class. Nodes are joined to every other sample within
// radius 3.65h in a common chart, so graph distances never undershoot the
// flat metric and overshoot by at most ~1.4% plus O(h) sampling slack.
struct MeshGraph {
  enum Kind : std::uint8_t { kGrid = 0, kBoundary = 1, kVertex = 2 };

  struct Node {
    int face;   // canonical chart
    Vec2 pos;   // position in that chart
    int gi, gj; // grid coordinates (kGrid only, else -1)
    Kind kind;
    int vclass; // vertex class (kVertex only, else -1)
  };

  double h = 0;
  std::vector<Node> nodes;

  // CSR adjacency, both directions present.
  std::vector<int> off;
  std::vector<int> adj;
  std::vector<float> w;

  // Per-face spatial hash over every placement (a node can appear in several
  // charts); used for neighbor generation and snapping.
  struct FaceIndex {
    Vec2 lo;
    int nx = 0, ny = 0;
    double cell = 0;
    std::vector<std::vector<std::pair<int, Vec2>>> cells;
  };
  std::vector<FaceIndex> index;

  int degree(int v) const { return off[v + 1] - off[v]; }

  // Nearest node to a point of the given face, with its chart distance.
  std::pair<int, double> snap(int face, Vec2 p) const;

  // Grid nodes on the stride-subsampled lattice plus all vertex nodes.
  std::vector<int> sample_nodes(int stride) const;
};

// Builds the mesh. Requires 0 < h < systole/4 (MeshTooCoarse otherwise).
// Pass a nonnegative systole_hint to skip recomputing the systole.
MeshGraph build_mesh(const TranslationSurface& s, double h,
                     double systole_hint = -1.0);

// Multi-source Dijkstra; seeds carry an initial offset distance.
std::vector<double> mesh_distances(
    const MeshGraph& m, const std::vector<std::pair<int, double>>& seeds);
void mesh_distances_into(const MeshGraph& m,
                         const std::vector<std::pair<int, double>>& seeds,
                         std::vector<double>& dist);

// Graph distance between two surface points (snap legs included).
double mesh_point_distance(const MeshGraph& m, const SurfacePoint& a,
                           const SurfacePoint& b);

}  // namespace tsurf
