#include "tsurf/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tsurf/errors.hpp"

namespace tsurf {

Direction Direction::of_vector(Vec2 v) {
  const double n = norm(v);
  if (!(n > 0) || !std::isfinite(n))
    throw Error("Direction::of_vector: zero or non-finite vector");
  return Direction{v / n};
}

namespace {

constexpr double kThroughSnap = 1e-11;  // relative: pass-through vertex snap

struct Marcher {
  const TranslationSurface& s;
  double eps_sing;                     // cone tube radius (0 disables)
  const std::vector<char>* stop_cls;   // optional vertex stop set
  double stop_snap;                    // vertex snap radius for stop classes
  double scale;

  explicit Marcher(const TranslationSurface& surf, double eps,
                   const std::vector<char>* stop, double snap)
      : s(surf), eps_sing(eps), stop_cls(stop), stop_snap(snap) {
    scale = surface_scale(surf);
  }

  bool stops_at(int cls) const {
    if (stop_cls) return (*stop_cls)[cls] != 0;
    return s.cone_points[cls].is_singular();
  }

  // Select the corner of `cls` whose angular sector contains u, and position
  // the march state at that corner. Directions agree across charts because
  // gluings are pure translations.
  std::pair<int, int> sector_corner(int cls, Vec2 u) const {
    const VertexClass& vc = s.classes[cls];
    int best_f = -1, best_v = -1;
    double best_margin = -std::numeric_limits<double>::infinity();
    for (const auto& [f, v] : vc.corners) {
      Vec2 d_out = s.faces[f].edge_vector(v);
      double phi = ccw_angle(d_out, u);
      if (phi > 2 * kPi - 1e-9) phi = 0.0;
      const double ang = interior_angle(s.faces[f].v, v);
      if (phi <= ang + 1e-12) {
        const double margin = ang - phi;
        if (margin > best_margin) {
          best_margin = margin;
          best_f = f;
          best_v = v;
        }
      }
    }
    if (best_f < 0)
      throw Error("flow: direction not contained in any corner sector");
    return {best_f, best_v};
  }
};

struct MarchStop {
  Termination term = Termination::completed;
  int stop_class = -1;
};

// Advance from (face, p) along unit u for max_len, appending chords.
// Stops at cone points (tube radius eps_sing) or at stop-set vertices.
MarchStop march(const Marcher& m, int face, Vec2 p, Vec2 u, double max_len,
                std::vector<Chord>& chords, double& out_len,
                SurfacePoint& out_end) {
  const TranslationSurface& s = m.s;
  double cum = 0.0;
  MarchStop result;
  long long steps = 0;

  while (true) {
    if (++steps > kMaxChords)
      throw NonTermination("flow: chord budget exceeded");
    const PolygonFace& f = s.faces[face];
    const int n = f.size();
    const double t_eps = 1e-12 * (m.scale + norm(p));

    // Exit through the face boundary.
    double t_exit = std::numeric_limits<double>::infinity();
    int e_exit = -1;
    for (int e = 0; e < n; ++e) {
      const Vec2 A = f.vertex(e), E = f.edge_vector(e);
      const double den = cross(u, E);
      if (std::abs(den) < 1e-15 * norm(E)) continue;  // parallel
      const double t = cross(A - p, E) / den;
      const double sp = cross(A - p, u) / den;
      if (t <= t_eps) continue;
      if (sp < -1e-9 || sp > 1 + 1e-9) continue;
      if (t < t_exit) {
        t_exit = t;
        e_exit = e;
      }
    }
    if (e_exit < 0) throw Error("flow: ray found no exit from face");

    const double remaining = max_len - cum;
    const double t_cap = std::min(t_exit, remaining);

    // Cone tube: stop when the chord passes within eps_sing of a stopping
    // vertex (any cone for the flow; configured classes for shots).
    if (m.eps_sing > 0) {
      double t_stop = std::numeric_limits<double>::infinity();
      int cls_stop = -1;
      for (int vi = 0; vi < n; ++vi) {
        const int cls = s.corner_class[face][vi];
        if (!m.stops_at(cls)) continue;
        const Vec2 w = f.vertex(vi) - p;
        const double proj = dot(w, u);
        if (proj < -m.eps_sing || proj > t_cap + m.eps_sing) continue;
        const double d_perp = std::abs(cross(u, w));
        if (std::hypot(d_perp, proj - std::clamp(proj, 0.0, t_cap)) >
            m.eps_sing)
          continue;
        const double tc = std::clamp(proj, 0.0, t_cap);
        if (tc < t_stop) {
          t_stop = tc;
          cls_stop = cls;
        }
      }
      if (cls_stop >= 0) {
        const Vec2 q = p + t_stop * u;
        chords.push_back({face, p, q});
        cum += t_stop;
        out_len = cum;
        out_end = {face, q};
        result.term = Termination::singular_hit;
        result.stop_class = cls_stop;
        return result;
      }
    }

    if (remaining <= t_exit) {
      const Vec2 q = p + remaining * u;
      chords.push_back({face, p, q});
      cum += remaining;
      out_len = cum;
      out_end = {face, q};
      return result;  // completed
    }

    const Vec2 q = p + t_exit * u;
    // Vertex handling at the exit point.
    const Vec2 A = f.vertex(e_exit);
    const Vec2 B = f.vertex((e_exit + 1) % n);
    int vertex_hit = -1;
    if (dist(q, A) <= std::max(m.stop_snap, kThroughSnap * m.scale))
      vertex_hit = e_exit;
    else if (dist(q, B) <= std::max(m.stop_snap, kThroughSnap * m.scale))
      vertex_hit = (e_exit + 1) % n;

    if (vertex_hit >= 0) {
      const int cls = s.corner_class[face][vertex_hit];
      const Vec2 w = f.vertex(vertex_hit);
      const double snap = m.stops_at(cls) ? std::max(m.stop_snap, m.eps_sing)
                                          : kThroughSnap * m.scale;
      if (dist(q, w) <= snap) {
        chords.push_back({face, p, w});
        cum += dist(p, w);
        if (m.stops_at(cls)) {
          out_len = cum;
          out_end = {face, w};
          result.term = Termination::singular_hit;
          result.stop_class = cls;
          return result;
        }
        // Marked regular point: continue straight through.
        const auto [fc, vc] = m.sector_corner(cls, u);
        face = fc;
        p = s.faces[fc].vertex(vc);
        continue;
      }
    }

    // Ordinary crossing: re-base into the partner chart.
    const Vec2 E = f.edge_vector(e_exit);
    double sp = dot(q - A, E) / norm2(E);
    sp = std::clamp(sp, 0.0, 1.0);
    EdgeRef nb;
    const Vec2 q2 = cross_gluing(s, face, e_exit, sp, &nb);
    chords.push_back({face, p, q});
    cum += t_exit;
    face = nb.face;
    p = q2;
  }
}

}  // namespace

TrajectorySegment trace_flow(const TranslationSurface& s, SurfacePoint start,
                             Direction dir, double length, double eps_sing) {
  if (!s.analyzed)
    throw InvalidSurface("trace_flow: surface must be analyzed");
  if (length < 0) throw Error("trace_flow: negative length");
  if (start.face < 0 || start.face >= static_cast<int>(s.faces.size()))
    throw Error("trace_flow: start face out of range");

  const double scale = surface_scale(s);
  const PolygonFace& f0 = s.faces[start.face];
  if (!point_in_polygon(start.p, f0.v, 1e-9 * scale))
    throw Error("trace_flow: start point not in its face");

  // Starts at (or too close to) a singularity are rejected; starts at a
  // marked regular vertex flow straight out of it.
  Marcher m(s, eps_sing, nullptr, 0.0);
  int face = start.face;
  Vec2 p = start.p;
  const Vec2 u = dir.u;

  for (int vi = 0; vi < f0.size(); ++vi) {
    const int cls = s.corner_class[start.face][vi];
    const double d = dist(start.p, f0.vertex(vi));
    if (s.cone_points[cls].is_singular() && d <= eps_sing)
      throw StartTooClose("trace_flow: start within eps_sing of a cone point");
    if (!s.cone_points[cls].is_singular() && d <= kThroughSnap * scale) {
      const auto [fc, vc] = m.sector_corner(cls, u);
      face = fc;
      p = s.faces[fc].vertex(vc);
    }
  }

  // Start on an edge with the direction pointing out of the face: hop to the
  // glued chart first.
  {
    const PolygonFace& f = s.faces[face];
    for (int e = 0; e < f.size(); ++e) {
      const Vec2 A = f.vertex(e), E = f.edge_vector(e);
      if (point_segment_distance(p, A, A + E) <= 1e-12 * scale &&
          dist(p, A) > kThroughSnap * scale &&
          dist(p, A + E) > kThroughSnap * scale && cross(E, u) < 0) {
        const double sp = std::clamp(dot(p - A, E) / norm2(E), 0.0, 1.0);
        EdgeRef nb;
        p = cross_gluing(s, face, e, sp, &nb);
        face = nb.face;
        break;
      }
    }
  }

  TrajectorySegment seg;
  seg.start = start;
  seg.direction = dir;
  if (length == 0) {
    seg.chords.push_back({face, p, p});
    seg.end = {face, p};
    return seg;
  }

  SurfacePoint end;
  double got = 0.0;
  const MarchStop stop = march(m, face, p, u, length, seg.chords, got, end);
  seg.total_length = got;
  seg.termination = stop.term;
  seg.end = end;
  return seg;
}

double closed_orbit_length(const TranslationSurface& unit_torus,
                           Direction dir) {
  // The oracle is defined for the standard unit square torus only.
  bool standard = unit_torus.faces.size() == 1 &&
                  unit_torus.faces[0].size() == 4;
  if (standard) {
    for (int e = 0; e < 4 && standard; ++e) {
      const Vec2 w = unit_torus.faces[0].edge_vector(e);
      if (std::abs(std::abs(w.x) + std::abs(w.y) - 1.0) > 1e-12 ||
          std::min(std::abs(w.x), std::abs(w.y)) > 1e-12)
        standard = false;
    }
  }
  if (!standard)
    throw InvalidSurface(
        "closed_orbit_length: expects the unit square torus with basis "
        "(1,0),(0,1)");

  const Vec2 u = dir.u;
  if (std::abs(u.x) < 1e-15) return 1.0;  // vertical: primitive vector (0,1)
  const double slope = u.y / u.x;

  // Continued-fraction rational reconstruction with denominator <= 1e6.
  double x = slope;
  long long p_prev = 0, q_prev = 1;  // p_{-2}/q_{-2}
  long long p_cur = 1, q_cur = 0;    // p_{-1}/q_{-1}
  for (int it = 0; it < 48; ++it) {
    const double fa = std::floor(x);
    const long long a = static_cast<long long>(fa);
    const long long p_next = a * p_cur + p_prev;
    const long long q_next = a * q_cur + q_prev;
    if (q_next > 1'000'000 || q_next < 0) break;
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
    if (std::abs(slope * q_cur - p_cur) <= 1e-9)
      return std::hypot(static_cast<double>(p_cur),
                        static_cast<double>(q_cur));
    const double frac = x - fa;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  throw IrrationalSlope(
      "closed_orbit_length: no rational slope p/q with q <= 1e6 matches");
}

std::string trajectory_csv(const TrajectorySegment& seg) {
  std::ostringstream os;
  os << "face,entry_x,entry_y,exit_x,exit_y,cum_length\n";
  os.precision(15);
  double cum = 0.0;
  for (const Chord& c : seg.chords) {
    cum += c.length();
    os << c.face << ',' << c.entry.x << ',' << c.entry.y << ',' << c.exit.x
       << ',' << c.exit.y << ',' << cum << '\n';
  }
  return os.str();
}

VertexShot shoot_from_vertex(const TranslationSurface& s, int cls, Vec2 dir,
                             double max_len,
                             const std::vector<char>& stop_class) {
  const Vec2 u = dir / norm(dir);
  Marcher m(s, 0.0, &stop_class, 1e-9 * surface_scale(s));

  // A cone of angle 2pi(k+1) sees the direction u in k+1 distinct corner
  // sectors; shoot from each of them and keep the shortest hit.
  VertexShot best;
  best.length = max_len;
  for (const auto& [f, v] : s.classes[cls].corners) {
    const Vec2 d_out = s.faces[f].edge_vector(v);
    double phi = ccw_angle(d_out, u);
    if (phi > 2 * kPi - 1e-9) phi = 0.0;
    if (phi > interior_angle(s.faces[f].v, v) + 1e-12) continue;

    std::vector<Chord> chords;
    double got = 0.0;
    SurfacePoint end;
    const MarchStop stop =
        march(m, f, s.faces[f].vertex(v), u, max_len, chords, got, end);
    if (stop.term == Termination::singular_hit &&
        (!best.hit || got < best.length)) {
      best.hit = true;
      best.cls = stop.stop_class;
      best.length = got;
    }
  }
  return best;
}

}  // namespace tsurf
