#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tsurf/geometry.hpp"

namespace tsurf {

struct PolygonFace {
  std::vector<Vec2> v;  // counterclockwise

  int size() const { return static_cast<int>(v.size()); }
  Vec2 vertex(int i) const { return v[i]; }
  // Directed edge i runs v[i] -> v[(i+1) % n].
  Vec2 edge_vector(int i) const {
    return v[(i + 1) % v.size()] - v[i];
  }
  double area() const { return polygon_signed_area(v); }
};

// Edge ea of face fa is identified with edge eb of face fb by a translation
// (the two edge vectors are antiparallel: a point at parameter s along edge a
// maps to parameter 1-s along edge b).
struct EdgeGluing {
  int fa = 0, ea = 0, fb = 0, eb = 0;
};

struct EdgeRef {
  int face = -1;
  int edge = -1;
  bool valid() const { return face >= 0; }
  friend bool operator==(EdgeRef l, EdgeRef r) {
    return l.face == r.face && l.edge == r.edge;
  }
};

// One equivalence class of polygon corners under the gluings.
struct VertexClass {
  std::vector<std::pair<int, int>> corners;  // (face, vertex) in walk order
  double total_angle = 0.0;
  int order = 0;  // total_angle = 2*pi*(order + 1)
};

struct ConePoint {
  int vertex_class = 0;
  double total_angle = 0.0;
  int order = 0;  // 0 means a marked regular point, not a singularity
  bool is_singular() const { return order > 0; }
};

struct StratumSignature {
  std::vector<int> kappa;  // positive cone orders, sorted descending
  friend bool operator==(const StratumSignature& a,
                         const StratumSignature& b) {
    return a.kappa == b.kappa;
  }
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
  std::string to_string() const;
};

struct TranslationSurface {
  std::string name;
  std::vector<PolygonFace> faces;
  std::vector<EdgeGluing> gluings;

  // Derived data, filled by analyze(). Operations that need the glued
  // structure require an analyzed surface.
  bool analyzed = false;
  std::vector<int> edge_offset;                // face -> first flat edge id
  std::vector<EdgeRef> partner;                // flat edge id -> glued edge
  std::vector<std::vector<int>> corner_class;  // [face][vertex] -> class id
  std::vector<VertexClass> classes;
  std::vector<ConePoint> cone_points;  // one entry per vertex class
  StratumSignature stratum;
  int genus = 0;
  double total_area = 0.0;

  int n_face_edges() const;
  int edge_id(int face, int edge) const { return edge_offset[face] + edge; }
  EdgeRef partner_of(int face, int edge) const {
    return partner[edge_id(face, edge)];
  }
  bool has_singularity() const;
  // Classes that systole geodesics may join: cone points when the surface
  // has singularities, otherwise the marked regular classes.
  std::vector<int> endpoint_classes() const;
};

// Checks every structural invariant and reports all violations (never
// throws). An empty report means the surface is valid.
ValidationReport validate(const TranslationSurface& s);

// Computes the derived data (edge partners, vertex classes, cone points,
// stratum, genus, area). Throws InvalidSurface when validation fails.
void analyze(TranslationSurface& s);
TranslationSurface analyzed_copy(TranslationSurface s);

std::pair<StratumSignature, int> stratum_and_genus(const TranslationSurface& s);
double area(const TranslationSurface& s);
// sqrt(area): the length scale used for relative tolerances.
double surface_scale(const TranslationSurface& s);
double min_edge_length(const TranslationSurface& s);

// Map a point at parameter sp in [0,1] along edge (face, edge) into the
// glued neighbor's chart. `out` receives the partner edge if non-null.
Vec2 cross_gluing(const TranslationSurface& s, int face, int edge, double sp,
                  EdgeRef* out = nullptr);
// Chart translation g such that a point p on edge (face, edge) appears at
// p + g in the partner face's chart.
Vec2 gluing_translation(const TranslationSurface& s, int face, int edge);

// Successor corner when rotating counterclockwise around the vertex class of
// corner (face, vertex): crosses the corner's incoming boundary edge.
std::pair<int, int> next_corner(const TranslationSurface& s, int face,
                                int vertex);

// Position (face chart) of the first corner of a vertex class.
Vec2 class_position(const TranslationSurface& s, int cls, int* face = nullptr);

// Test-support equality: same sorted edge-vector multiset (up to sign),
// same area, stratum and genus. Not a cut-and-glue equivalence check.
bool same_invariants(const TranslationSurface& a, const TranslationSurface& b,
                     double tol = 1e-9);

}  // namespace tsurf
