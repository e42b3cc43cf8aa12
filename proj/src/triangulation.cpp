#include "tsurf/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "tsurf/errors.hpp"
#include "tsurf/geometry.hpp"

namespace tsurf {

namespace {

// Positive when d lies strictly inside the circumcircle of the ccw triangle
// (a, b, c).
double incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const double ax = a.x - d.x, ay = a.y - d.y;
  const double bx = b.x - d.x, by = b.y - d.y;
  const double cx = c.x - d.x, cy = c.y - d.y;
  const double a2 = ax * ax + ay * ay;
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  return ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) +
         a2 * (bx * cy - by * cx);
}

Vec2 canonical_dir(Vec2 v) {
  if (v.y < 0 || (v.y == 0 && v.x < 0)) return {-v.x, -v.y};
  return v;
}

bool lex_less(const Vec2& a, const Vec2& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

struct Slot {
  int t = -1;
  int s = -1;
  bool operator==(const Slot& o) const { return t == o.t && s == o.s; }
};

}  // namespace

double Triangulation::max_edge() const {
  double m = 0;
  for (const Tri& tr : tris)
    for (int k = 0; k < 3; ++k)
      m = std::max(m, dist(tr.p[k], tr.p[(k + 1) % 3]));
  return m;
}

Vec2 Triangulation::opposite_apex(int t, int k) const {
  const Tri& a = tris[t];
  const Tri& b = tris[a.nbr[k]];
  const int j = a.nbr_side[k];
  // Side j of b runs opposite to side k of a; b.p[j+1] maps onto a.p[k].
  const Vec2 shift = a.p[k] - b.p[(j + 1) % 3];
  return b.p[(j + 2) % 3] + shift;
}

double Triangulation::angle_sum(int vclass) const {
  double s = 0;
  for (const Tri& tr : tris)
    for (int k = 0; k < 3; ++k) {
      if (tr.vclass[k] != vclass) continue;
      const Vec2 u = tr.p[(k + 1) % 3] - tr.p[k];
      const Vec2 w = tr.p[(k + 2) % 3] - tr.p[k];
      s += std::atan2(std::abs(cross(u, w)), dot(u, w));
    }
  return s;
}

Triangulation delaunay_triangulate(const TranslationSurface& s0) {
  const TranslationSurface s = s0.analyzed ? s0 : analyzed_copy(s0);
  Triangulation out;

  // Ear-clip each face; remember which (face, corner) each triangle corner
  // came from so boundary sides can be matched with the gluings.
  std::map<std::pair<long long, long long>, Slot> open;  // keyed by edge id
  auto key_of = [&s](int f, int e) {
    return std::make_pair<long long, long long>(f, e);
  };
  for (int f = 0; f < static_cast<int>(s.faces.size()); ++f) {
    const PolygonFace& face = s.faces[f];
    const int n = face.size();
    const std::vector<std::array<int, 3>> ears = ear_clip(face.v);
    const int base = static_cast<int>(out.tris.size());
    // Diagonals are shared by exactly two of the face's own triangles.
    std::map<std::pair<int, int>, Slot> diag;
    for (int t = 0; t < static_cast<int>(ears.size()); ++t) {
      Triangulation::Tri tr;
      for (int k = 0; k < 3; ++k) {
        tr.p[k] = face.v[ears[t][k]];
        tr.vclass[k] = s.corner_class[f][ears[t][k]];
        tr.nbr[k] = -1;
        tr.nbr_side[k] = -1;
      }
      out.tris.push_back(tr);
      for (int k = 0; k < 3; ++k) {
        const int ia = ears[t][k];
        const int ib = ears[t][(k + 1) % 3];
        if ((ia + 1) % n == ib) {
          open[key_of(f, ia)] = Slot{base + t, k};
        } else {
          const auto dk = std::minmax(ia, ib);
          auto it = diag.find({dk.first, dk.second});
          if (it == diag.end()) {
            diag[{dk.first, dk.second}] = Slot{base + t, k};
          } else {
            const Slot o = it->second;
            out.tris[base + t].nbr[k] = o.t;
            out.tris[base + t].nbr_side[k] = o.s;
            out.tris[o.t].nbr[o.s] = base + t;
            out.tris[o.t].nbr_side[o.s] = k;
            diag.erase(it);
          }
        }
      }
    }
    if (!diag.empty()) throw NonTermination("triangulation: unmatched diagonal");
  }

  // Stitch across the surface gluings.
  for (const EdgeGluing& g : s.gluings) {
    const Slot a = open.at(key_of(g.fa, g.ea));
    const Slot b = open.at(key_of(g.fb, g.eb));
    out.tris[a.t].nbr[a.s] = b.t;
    out.tris[a.t].nbr_side[a.s] = b.s;
    out.tris[b.t].nbr[b.s] = a.t;
    out.tris[b.t].nbr_side[b.s] = a.s;
  }
  for (const Triangulation::Tri& tr : out.tris)
    for (int k = 0; k < 3; ++k)
      if (tr.nbr[k] < 0) throw NonTermination("triangulation: open side");

  // Lawson flips until locally Delaunay everywhere.
  std::vector<Slot> stack;
  for (int t = 0; t < static_cast<int>(out.tris.size()); ++t)
    for (int k = 0; k < 3; ++k) stack.push_back(Slot{t, k});

  constexpr int kFlipBudget = 1000000;
  while (!stack.empty()) {
    const Slot e = stack.back();
    stack.pop_back();
    Triangulation::Tri& ta = out.tris[e.t];
    const int o = ta.nbr[e.s];
    const int j = ta.nbr_side[e.s];

    const Vec2 A = ta.p[e.s];
    const Vec2 B = ta.p[(e.s + 1) % 3];
    const Vec2 C = ta.p[(e.s + 2) % 3];
    const Vec2 D = out.opposite_apex(e.t, e.s);

    double L = 0;
    for (const Vec2& q : {B - A, C - A, D - A, C - B, D - B, D - C})
      L = std::max(L, norm(q));
    const double scale4 = L * L * L * L;
    const double det = incircle(A, B, C, D);

    bool flip = det > 1e-12 * scale4;
    if (!flip && std::abs(det) <= 1e-12 * scale4) {
      // Cocircular: prefer the lexicographically smaller canonical diagonal.
      if (lex_less(canonical_dir(D - C), canonical_dir(B - A))) flip = true;
    }
    if (!flip) continue;

    // The flipped triangles must stay ccw; for strict violations this is
    // automatic, for tie flips it guards against degenerate quads.
    const double eps_area = 1e-12 * L * L;
    if (cross(D - A, C - A) <= eps_area || cross(B - D, C - D) <= eps_area)
      continue;

    if (++out.flips > kFlipBudget)
      throw NonTermination("triangulation: flip budget exceeded");

    Triangulation::Tri& tb = out.tris[o];
    // Outer neighbors before rewriting (slots may point back into t/o).
    const Slot r_bc{ta.nbr[(e.s + 1) % 3], ta.nbr_side[(e.s + 1) % 3]};
    const Slot r_ca{ta.nbr[(e.s + 2) % 3], ta.nbr_side[(e.s + 2) % 3]};
    const Slot r_ad{tb.nbr[(j + 1) % 3], tb.nbr_side[(j + 1) % 3]};
    const Slot r_db{tb.nbr[(j + 2) % 3], tb.nbr_side[(j + 2) % 3]};

    const int cA = ta.vclass[e.s];
    const int cB = ta.vclass[(e.s + 1) % 3];
    const int cC = ta.vclass[(e.s + 2) % 3];
    const int cD = tb.vclass[(j + 2) % 3];

    // Old slots that get renamed by the flip.
    const Slot old_slots[4] = {{e.t, (e.s + 1) % 3},
                               {e.t, (e.s + 2) % 3},
                               {o, (j + 1) % 3},
                               {o, (j + 2) % 3}};
    const Slot new_slots[4] = {{o, 1}, {e.t, 2}, {e.t, 0}, {o, 0}};
    auto remap = [&](Slot r) {
      for (int i = 0; i < 4; ++i)
        if (r == old_slots[i]) return new_slots[i];
      return r;
    };

    // e.t becomes (A, D, C); o becomes (D, B, C), both in t's chart.
    ta.p = {A, D, C};
    ta.vclass = {cA, cD, cC};
    tb.p = {D, B, C};
    tb.vclass = {cD, cB, cC};
    ta.nbr[1] = o;
    ta.nbr_side[1] = 2;
    tb.nbr[2] = e.t;
    tb.nbr_side[2] = 1;

    const Slot outer[4] = {remap(r_ad), remap(r_ca), remap(r_db), remap(r_bc)};
    const Slot mine[4] = {{e.t, 0}, {e.t, 2}, {o, 0}, {o, 1}};
    for (int i = 0; i < 4; ++i) {
      out.tris[mine[i].t].nbr[mine[i].s] = outer[i].t;
      out.tris[mine[i].t].nbr_side[mine[i].s] = outer[i].s;
      out.tris[outer[i].t].nbr[outer[i].s] = mine[i].t;
      out.tris[outer[i].t].nbr_side[outer[i].s] = mine[i].s;
      stack.push_back(mine[i]);
    }
  }

  return out;
}

int delaunay_violations(const Triangulation& t, double slack) {
  int bad = 0;
  for (int i = 0; i < static_cast<int>(t.tris.size()); ++i)
    for (int k = 0; k < 3; ++k) {
      const Triangulation::Tri& tr = t.tris[i];
      if (std::make_pair(i, k) >
          std::make_pair(tr.nbr[k], tr.nbr_side[k]))
        continue;
      const Vec2 A = tr.p[k];
      const Vec2 B = tr.p[(k + 1) % 3];
      const Vec2 C = tr.p[(k + 2) % 3];
      const Vec2 D = t.opposite_apex(i, k);
      double L = 0;
      for (const Vec2& q : {B - A, C - A, D - A, C - B, D - B, D - C})
        L = std::max(L, norm(q));
      if (incircle(A, B, C, D) > slack * L * L * L * L) ++bad;
    }
  return bad;
}

}  // namespace tsurf
