#include "tsurf/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "tsurf/errors.hpp"
#include "tsurf/geometry.hpp"
#include "tsurf/metrics.hpp"

namespace tsurf {

namespace {

constexpr double kLinkRadius = 3.65;  // in units of h

struct Placement {
  int node;
  int face;
  Vec2 pos;
};

void bbox_of(const std::vector<Vec2>& poly, Vec2& lo, Vec2& hi) {
  lo = hi = poly[0];
  for (const Vec2& p : poly) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
  }
}

}  // namespace

std::pair<int, double> MeshGraph::snap(int face, Vec2 p) const {
  const FaceIndex& fi = index[face];
  const int ci = static_cast<int>(std::floor((p.x - fi.lo.x) / fi.cell));
  const int cj = static_cast<int>(std::floor((p.y - fi.lo.y) / fi.cell));
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (int ring : {2, 4, 8}) {
    for (int j = std::max(0, cj - ring); j <= std::min(fi.ny - 1, cj + ring);
         ++j)
      for (int i = std::max(0, ci - ring); i <= std::min(fi.nx - 1, ci + ring);
           ++i)
        for (const auto& [node, pos] : fi.cells[j * fi.nx + i]) {
          const double d = dist(p, pos);
          if (d < best_d) {
            best_d = d;
            best = node;
          }
        }
    if (best >= 0 && best_d <= (ring - 1) * fi.cell) break;
  }
  if (best < 0) throw Error("mesh snap: no node near point");
  return {best, best_d};
}

std::vector<int> MeshGraph::sample_nodes(int stride) const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(nodes.size()); ++v) {
    const Node& nd = nodes[v];
    if (nd.kind == kVertex) out.push_back(v);
    if (nd.kind == kGrid && nd.gi % stride == 0 && nd.gj % stride == 0)
      out.push_back(v);
  }
  return out;
}

MeshGraph build_mesh(const TranslationSurface& s0, double h,
                     double systole_hint) {
  const TranslationSurface s = s0.analyzed ? s0 : analyzed_copy(s0);
  const double sys = systole_hint >= 0 ? systole_hint : systole(s);
  if (!(h > 0) || !(h < sys / 4))
    throw MeshTooCoarse("build_mesh: need 0 < h < systole/4, got h=" +
                        std::to_string(h) + " systole=" + std::to_string(sys));

  MeshGraph m;
  m.h = h;
  const int nf = static_cast<int>(s.faces.size());
  std::vector<Placement> places;

  // Cell-centered grid nodes, per face.
  for (int f = 0; f < nf; ++f) {
    const PolygonFace& face = s.faces[f];
    Vec2 lo, hi;
    bbox_of(face.v, lo, hi);
    const int nx = std::max(1, static_cast<int>(std::ceil((hi.x - lo.x) / h - 1e-12)));
    const int ny = std::max(1, static_cast<int>(std::ceil((hi.y - lo.y) / h - 1e-12)));
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const Vec2 p{lo.x + (i + 0.5) * h, lo.y + (j + 0.5) * h};
        if (!point_in_polygon(p, face.v, 0.0)) continue;
        double bd = std::numeric_limits<double>::infinity();
        for (int e = 0; e < face.size(); ++e)
          bd = std::min(bd, point_segment_distance(p, face.vertex(e),
                                                   face.vertex(e + 1)));
        if (bd <= 1e-6 * h) continue;  // boundary samples cover it
        const int id = static_cast<int>(m.nodes.size());
        m.nodes.push_back({f, p, i, j, MeshGraph::kGrid, -1});
        places.push_back({id, f, p});
      }
  }

  // Edge samples at spacing <= h/2, one shared node per glued pair.
  for (const EdgeGluing& g : s.gluings) {
    const Vec2 a0 = s.faces[g.fa].vertex(g.ea);
    const Vec2 ea = s.faces[g.fa].edge_vector(g.ea);
    const Vec2 b0 = s.faces[g.fb].vertex(g.eb);
    const Vec2 eb = s.faces[g.fb].edge_vector(g.eb);
    const int cnt = std::max(1, static_cast<int>(std::ceil(norm(ea) / (h / 2))));
    for (int k = 0; k < cnt; ++k) {
      const double t = (k + 0.5) / cnt;
      const int id = static_cast<int>(m.nodes.size());
      m.nodes.push_back({g.fa, a0 + t * ea, -1, -1, MeshGraph::kBoundary, -1});
      places.push_back({id, g.fa, a0 + t * ea});
      places.push_back({id, g.fb, b0 + (1 - t) * eb});
    }
  }

  // One node per vertex class, placed at every corner of the class.
  for (int c = 0; c < static_cast<int>(s.classes.size()); ++c) {
    const int id = static_cast<int>(m.nodes.size());
    bool first = true;
    for (const auto& [f, v] : s.classes[c].corners) {
      const Vec2 p = s.faces[f].vertex(v);
      if (first) {
        m.nodes.push_back({f, p, -1, -1, MeshGraph::kVertex, c});
        first = false;
      }
      places.push_back({id, f, p});
    }
  }

  // Per-face spatial hash (cell size h).
  m.index.resize(nf);
  for (int f = 0; f < nf; ++f) {
    Vec2 lo, hi;
    bbox_of(s.faces[f].v, lo, hi);
    MeshGraph::FaceIndex& fi = m.index[f];
    fi.cell = h;
    fi.lo = {lo.x - 2 * h, lo.y - 2 * h};
    fi.nx = static_cast<int>(std::ceil((hi.x - fi.lo.x) / h)) + 3;
    fi.ny = static_cast<int>(std::ceil((hi.y - fi.lo.y) / h)) + 3;
    fi.cells.assign(static_cast<size_t>(fi.nx) * fi.ny, {});
  }
  for (const Placement& pl : places) {
    MeshGraph::FaceIndex& fi = m.index[pl.face];
    const int i = std::clamp(
        static_cast<int>(std::floor((pl.pos.x - fi.lo.x) / fi.cell)), 0,
        fi.nx - 1);
    const int j = std::clamp(
        static_cast<int>(std::floor((pl.pos.y - fi.lo.y) / fi.cell)), 0,
        fi.ny - 1);
    fi.cells[static_cast<size_t>(j) * fi.nx + i].push_back({pl.node, pl.pos});
  }

  // Link every pair of placements within the template radius in some common
  // chart. Straight chords are genuine surface paths (faces are checked for
  // convexity; non-convex ones get an explicit containment test), so graph
  // distances can only overestimate the metric.
  std::vector<char> convex(nf);
  for (int f = 0; f < nf; ++f) convex[f] = polygon_is_convex(s.faces[f].v);

  const double R = kLinkRadius * h;
  std::vector<std::pair<long long, float>> half;  // (u<<32|v, w) with u < v
  half.reserve(places.size() * 24);
  const int reach = static_cast<int>(std::ceil(kLinkRadius)) + 1;
  for (const Placement& pl : places) {
    const MeshGraph::FaceIndex& fi = m.index[pl.face];
    const int ci = static_cast<int>(std::floor((pl.pos.x - fi.lo.x) / fi.cell));
    const int cj = static_cast<int>(std::floor((pl.pos.y - fi.lo.y) / fi.cell));
    for (int j = std::max(0, cj - reach); j <= std::min(fi.ny - 1, cj + reach);
         ++j)
      for (int i = std::max(0, ci - reach); i <= std::min(fi.nx - 1, ci + reach);
           ++i)
        for (const auto& [v, pv] : fi.cells[static_cast<size_t>(j) * fi.nx + i]) {
          if (v <= pl.node) continue;
          const double d = dist(pl.pos, pv);
          if (d > R || d < 1e-12 * h) continue;
          if (!convex[pl.face] &&
              !segment_in_polygon(pl.pos, pv, s.faces[pl.face].v, false))
            continue;
          half.push_back({(static_cast<long long>(pl.node) << 32) | v,
                          static_cast<float>(d)});
        }
  }
  std::sort(half.begin(), half.end());
  half.erase(std::unique(half.begin(), half.end(),
                         [](const auto& a, const auto& b) {
                           return a.first == b.first;
                         }),
             half.end());

  // CSR with both directions.
  const int n = static_cast<int>(m.nodes.size());
  m.off.assign(n + 1, 0);
  for (const auto& [key, wt] : half) {
    ++m.off[(key >> 32) + 1];
    ++m.off[(key & 0xffffffffLL) + 1];
  }
  for (int v = 0; v < n; ++v) m.off[v + 1] += m.off[v];
  m.adj.resize(half.size() * 2);
  m.w.resize(half.size() * 2);
  std::vector<int> cursor(m.off.begin(), m.off.end() - 1);
  for (const auto& [key, wt] : half) {
    const int u = static_cast<int>(key >> 32);
    const int v = static_cast<int>(key & 0xffffffffLL);
    m.adj[cursor[u]] = v;
    m.w[cursor[u]++] = wt;
    m.adj[cursor[v]] = u;
    m.w[cursor[v]++] = wt;
  }
  return m;
}

void mesh_distances_into(const MeshGraph& m,
                         const std::vector<std::pair<int, double>>& seeds,
                         std::vector<double>& dist) {
  const int n = static_cast<int>(m.nodes.size());
  dist.assign(n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  for (const auto& [v, d0] : seeds) {
    if (d0 < dist[v]) {
      dist[v] = d0;
      pq.push({d0, v});
    }
  }
  while (!pq.empty()) {
    const auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    const int end = m.off[v + 1];
    for (int e = m.off[v]; e < end; ++e) {
      const int u = m.adj[e];
      const double nd = d + m.w[e];
      if (nd < dist[u]) {
        dist[u] = nd;
        pq.push({nd, u});
      }
    }
  }
}

std::vector<double> mesh_distances(
    const MeshGraph& m, const std::vector<std::pair<int, double>>& seeds) {
  std::vector<double> dist;
  mesh_distances_into(m, seeds, dist);
  return dist;
}

double mesh_point_distance(const MeshGraph& m, const SurfacePoint& a,
                           const SurfacePoint& b) {
  const auto [na, da] = m.snap(a.face, a.p);
  const auto [nb, db] = m.snap(b.face, b.p);
  std::vector<double> dist;
  mesh_distances_into(m, {{na, da}}, dist);
  return dist[nb] + db;
}

}  // namespace tsurf
