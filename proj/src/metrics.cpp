#include "tsurf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <tuple>
#include <vector>

#include "tsurf/errors.hpp"
#include "tsurf/flow.hpp"
#include "tsurf/geometry.hpp"
#include "tsurf/triangulation.hpp"

namespace tsurf {

namespace {

struct Candidate {
  double len;
  int cls;   // start class to verify from
  Vec2 dir;
};

// d inside the closed counterclockwise cone [lo, hi] of width <= pi.
bool in_cone(Vec2 lo, Vec2 hi, Vec2 d, double eps) {
  return cross(lo, d) >= -eps && cross(d, hi) >= -eps;
}

// Develops the triangulation around every corner of `cls` (vertex lifted to
// the origin) and collects vectors to visible lifts of stop-class vertices
// within radius R. Each branch of the developing tree carries the cone of
// sight directions that reach its triangle through the crossed sides; the
// cone only narrows, so branches die off once the crossed side leaves the
// R-disk. Candidates may still be spurious (a ray grazing a cone point is
// kept on the closed boundary), so the caller verifies each with a geodesic
// shot before trusting it.
void enumerate_from_class(const TranslationSurface& s, const Triangulation& T,
                          int cls, const std::vector<char>& stops, double R,
                          std::vector<Candidate>& out) {
  const double scale = surface_scale(s);
  const double q = 1e-7 * scale;
  const double eps = 1e-9;
  std::map<std::pair<long long, long long>, bool> found;

  struct Branch {
    int t;
    int in;  // side crossed to enter (-1 for the seed wedge)
    std::array<Vec2, 3> p;
    Vec2 lo, hi;
  };
  std::deque<Branch> queue;

  for (int t = 0; t < static_cast<int>(T.tris.size()); ++t)
    for (int k = 0; k < 3; ++k) {
      if (T.tris[t].vclass[k] != cls) continue;
      Branch b;
      b.t = t;
      b.in = -1;
      for (int i = 0; i < 3; ++i)
        b.p[i] = T.tris[t].p[i] - T.tris[t].p[k];
      b.lo = b.p[(k + 1) % 3] / norm(b.p[(k + 1) % 3]);
      b.hi = b.p[(k + 2) % 3] / norm(b.p[(k + 2) % 3]);
      queue.push_back(b);
    }

  long long budget = 2000000;
  while (!queue.empty()) {
    const Branch b = queue.front();
    queue.pop_front();
    if (--budget < 0) throw InvalidSurface("systole: development exploded");

    for (int i = 0; i < 3; ++i) {
      if (!stops[T.tris[b.t].vclass[i]]) continue;
      const Vec2 w = b.p[i];
      const double l = norm(w);
      if (l <= 1e-9 * scale || l > R) continue;
      if (!in_cone(b.lo, b.hi, w / l, eps)) continue;
      const auto key = std::make_pair(llround(w.x / q), llround(w.y / q));
      if (found.emplace(key, true).second) out.push_back({l, cls, w / l});
    }

    for (int e = 0; e < 3; ++e) {
      if (e == b.in) continue;
      const Vec2 A = b.p[e], B = b.p[(e + 1) % 3];
      if (point_segment_distance({0, 0}, A, B) > R) continue;
      const double la = norm(A), lb = norm(B);
      if (la <= 1e-12 * scale || lb <= 1e-12 * scale) continue;
      Vec2 sl = A / la, sh = B / lb;  // side span, counterclockwise from origin
      if (cross(sl, sh) < 0) std::swap(sl, sh);
      if (!in_cone(b.lo, b.hi, sl, eps) && !in_cone(sl, sh, b.lo, eps))
        continue;  // side span and sight cone are disjoint
      Branch c;
      c.lo = cross(sl, b.lo) >= 0 ? b.lo : sl;
      c.hi = cross(b.hi, sh) >= 0 ? b.hi : sh;
      if (cross(c.lo, c.hi) < -eps) continue;
      const Triangulation::Tri& tr = T.tris[b.t];
      c.t = tr.nbr[e];
      c.in = tr.nbr_side[e];
      const Triangulation::Tri& nb = T.tris[c.t];
      // Side c.in of the neighbor runs antiparallel: its start lands on B.
      const Vec2 shift = b.p[(e + 1) % 3] - nb.p[c.in];
      for (int i = 0; i < 3; ++i) c.p[i] = nb.p[i] + shift;
      queue.push_back(c);
    }
  }
}

}  // namespace

double systole(const TranslationSurface& s0) {
  const TranslationSurface s = s0.analyzed ? s0 : analyzed_copy(s0);
  const double scale = surface_scale(s);

  std::vector<char> stops(s.classes.size(), 0);
  bool any_cone = false;
  for (const ConePoint& c : s.cone_points) any_cone |= c.is_singular();
  for (size_t i = 0; i < s.classes.size(); ++i)
    stops[i] = any_cone ? (s.cone_points[i].is_singular() ? 1 : 0) : 1;

  const Triangulation T = delaunay_triangulate(s);
  double R = std::max(min_edge_length(s), 1e-6 * scale);
  const double tol = 1e-7 * scale;
  for (int round = 0; round < 40; ++round) {
    std::vector<Candidate> cands;
    for (size_t c = 0; c < stops.size(); ++c)
      if (stops[c])
        enumerate_from_class(s, T, static_cast<int>(c), stops, R, cands);
    std::sort(cands.begin(), cands.end(),
              [](const Candidate& a, const Candidate& b) { return a.len < b.len; });
    for (const Candidate& c : cands) {
      const VertexShot shot =
          shoot_from_vertex(s, c.cls, c.dir, c.len + tol, stops);
      // Any genuine connection shorter than c.len would have been a candidate
      // earlier in the sweep, so the first length agreement is the systole.
      if (shot.hit && std::abs(shot.length - c.len) <= tol) return c.len;
    }
    R *= 2;
  }
  throw InvalidSurface("systole: no saddle connection found");
}

DiameterEstimate mesh_diameter(const MeshGraph& m, int max_sources) {
  DiameterEstimate est;
  std::vector<int> srcs;
  for (int stride : {1, 2, 4, 8, 16, 32}) {
    srcs = m.sample_nodes(stride);
    est.stride = stride;
    if (static_cast<int>(srcs.size()) <= max_sources) break;
  }
  est.sources = static_cast<int>(srcs.size());

  double best = 0;
  std::vector<double> dist;
  for (const int v : srcs) {
    mesh_distances_into(m, {{v, 0.0}}, dist);
    for (const double d : dist) {
      if (std::isinf(d)) throw Error("mesh_diameter: mesh is disconnected");
      best = std::max(best, d);
    }
  }
  est.value = best;
  est.error = (0.71 * est.stride + 1.8) * m.h;
  return est;
}

DiameterEstimate diameter(const TranslationSurface& s0, double h) {
  const TranslationSurface s = s0.analyzed ? s0 : analyzed_copy(s0);
  const double sys = systole(s);
  const MeshGraph m = build_mesh(s, h, sys);
  return mesh_diameter(m);
}

SurfaceMetrics compute_metrics(const TranslationSurface& s0, double h) {
  const TranslationSurface s = s0.analyzed ? s0 : analyzed_copy(s0);
  SurfaceMetrics out;
  out.systole = systole(s);
  out.systole_err = 1e-7 * surface_scale(s);
  const MeshGraph m = build_mesh(s, h, out.systole);
  const DiameterEstimate d = mesh_diameter(m);
  out.diameter = d.value;
  out.diameter_err = d.error;
  out.area = s.total_area;
  out.mesh_spacing = h;
  return out;
}

}  // namespace tsurf
