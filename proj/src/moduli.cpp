#include "tsurf/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "tsurf/builders.hpp"
#include "tsurf/errors.hpp"
#include "tsurf/metrics.hpp"
#include "tsurf/triangulation.hpp"

namespace tsurf {

Mat2 geodesic_matrix(double t) {
  return Mat2::diag(std::exp(t), std::exp(-t));
}

Mat2 rotate_to_vertical(const Direction& d) {
  // Maps (dx, dy) to (0, 1); orthogonal with det = dx^2 + dy^2 = 1.
  return Mat2{d.u.y, -d.u.x, d.u.x, d.u.y};
}

TranslationSurface apply_matrix(const TranslationSurface& s, const Mat2& m) {
  if (m.det() <= 1e-12)
    throw OrientationReversing(
        "apply_matrix: matrix must have positive determinant");
  TranslationSurface out;
  out.name = s.name;
  out.gluings = s.gluings;
  out.faces.reserve(s.faces.size());
  for (const PolygonFace& f : s.faces) {
    PolygonFace g;
    g.v.reserve(f.v.size());
    for (const Vec2& p : f.v) g.v.push_back(m.apply(p));
    out.faces.push_back(std::move(g));
  }
  analyze(out);
  return out;
}

namespace {

Vec2 canonical_sign(Vec2 v) {
  if (v.y < 0 || (v.y == 0 && v.x < 0)) return {-v.x, -v.y};
  return v;
}

// Lagrange-reduced, canonically ordered basis of the lattice spanned by
// (u, v): shortest vector first, positive orientation, deterministic signs.
std::pair<Vec2, Vec2> reduce_basis(Vec2 u, Vec2 v) {
  if (std::abs(cross(u, v)) <= 1e-15 * norm(u) * norm(v))
    throw DegenerateBasis("renormalize: degenerate lattice basis");
  for (int it = 0; it < 256; ++it) {
    if (norm2(u) > norm2(v)) std::swap(u, v);
    const double mu = std::round(dot(u, v) / norm2(u));
    if (mu == 0) break;
    v = v - mu * u;
  }
  u = canonical_sign(u);
  v = canonical_sign(v);
  const bool swap_order =
      norm2(v) < norm2(u) - 1e-15 * norm2(u) ||
      (std::abs(norm2(v) - norm2(u)) <= 1e-15 * norm2(u) &&
       (v.x < u.x || (v.x == u.x && v.y < u.y)));
  if (swap_order) std::swap(u, v);
  if (cross(u, v) < 0) std::swap(u, v);
  return {u, v};
}

bool is_parallelogram_torus(const TranslationSurface& s) {
  if (s.faces.size() != 1 || s.faces[0].size() != 4) return false;
  if (s.has_singularity()) return false;
  const EdgeRef p0 = s.partner_of(0, 0);
  const EdgeRef p1 = s.partner_of(0, 1);
  return p0 == EdgeRef{0, 2} && p1 == EdgeRef{0, 3};
}

}  // namespace

TranslationSurface renormalize(const TranslationSurface& s0) {
  const TranslationSurface s = s0.analyzed ? s0 : analyzed_copy(s0);

  if (is_parallelogram_torus(s)) {
    const auto [u, v] =
        reduce_basis(s.faces[0].edge_vector(0), s.faces[0].edge_vector(1));
    TranslationSurface out = build_torus(u, v);
    out.name = s.name;
    return out;
  }

  // General case: the Delaunay triangles themselves become the faces. Each
  // triangle is shifted so its first vertex sits at the origin; edge vectors
  // are bitwise unchanged by the shift, so gluings stay exactly antiparallel.
  const Triangulation tri = delaunay_triangulate(s);
  TranslationSurface out;
  out.name = s.name;
  out.faces.reserve(tri.tris.size());
  for (const Triangulation::Tri& t : tri.tris) {
    PolygonFace f;
    f.v = {Vec2{0, 0}, t.p[1] - t.p[0], t.p[2] - t.p[0]};
    out.faces.push_back(std::move(f));
  }
  for (int i = 0; i < static_cast<int>(tri.tris.size()); ++i)
    for (int k = 0; k < 3; ++k) {
      const int o = tri.tris[i].nbr[k];
      const int j = tri.tris[i].nbr_side[k];
      if (std::make_pair(i, k) < std::make_pair(o, j))
        out.gluings.push_back({i, k, o, j});
    }
  analyze(out);
  return out;
}

DiameterTrack geodesic_track(const TranslationSurface& s, const Direction& dir,
                             double t_max, double dt, double h) {
  if (!(dt > 0)) throw NonPositiveInput("geodesic_track: dt must be > 0");
  if (t_max < 0) throw NonPositiveInput("geodesic_track: t_max must be >= 0");

  const TranslationSurface rotated =
      apply_matrix(s, rotate_to_vertical(dir));
  const double sys0 = systole(rotated);
  DiameterTrack track;
  track.t_max = t_max;
  track.dt = dt;
  track.h = h > 0 ? h : 0.01 * sys0;

  const int n = static_cast<int>(std::floor(t_max / dt + 1e-9));
  for (int i = 0; i <= n; ++i) {
    const double t = i * dt;
    const TranslationSurface cur =
        renormalize(apply_matrix(rotated, geodesic_matrix(t)));
    const double sys = systole(cur);
    const double ht = std::min(track.h, sys / 5.0);
    const MeshGraph mesh = build_mesh(cur, ht, sys);
    const DiameterEstimate d = mesh_diameter(mesh);
    track.samples.push_back({t, d.value, d.error, sys});
  }
  return track;
}

const char* to_string(Boundedness b) {
  switch (b) {
    case Boundedness::bounded_evidence:
      return "bounded_evidence";
    case Boundedness::divergence_evidence:
      return "divergence_evidence";
    default:
      return "inconclusive";
  }
}

BoundednessVerdict boundedness_diagnostic(const DiameterTrack& track) {
  const int n = static_cast<int>(track.samples.size());
  if (n < 8)
    throw TooFewSamples("boundedness_diagnostic: need >= 8 samples, got " +
                        std::to_string(n));

  BoundednessVerdict out;
  for (const TrackSample& s : track.samples)
    out.D_max = std::max(out.D_max, s.diameter);

  // Least-squares slope of log(diameter) against t over the last half.
  const int lo = n / 2;
  double st = 0, sy = 0, stt = 0, sty = 0;
  int m = 0;
  for (int i = lo; i < n; ++i) {
    const double t = track.samples[i].t;
    const double y = std::log(std::max(track.samples[i].diameter, 1e-300));
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
    ++m;
  }
  const double den = m * stt - st * st;
  out.growth_rate = den > 0 ? (m * sty - st * sy) / den : 0.0;

  std::vector<double> all;
  all.reserve(n);
  for (const TrackSample& s : track.samples) all.push_back(s.diameter);
  std::sort(all.begin(), all.end());
  const double median =
      n % 2 ? all[n / 2] : 0.5 * (all[n / 2 - 1] + all[n / 2]);
  double last_max = 0;
  for (int i = lo; i < n; ++i)
    last_max = std::max(last_max, track.samples[i].diameter);

  if (out.growth_rate >= 0.5)
    out.verdict = Boundedness::divergence_evidence;
  else if (last_max <= 1.2 * median)
    out.verdict = Boundedness::bounded_evidence;
  else
    out.verdict = Boundedness::inconclusive;
  return out;
}

std::string track_csv(const DiameterTrack& track) {
  std::ostringstream os;
  os << "t,diameter,diameter_err,systole\n";
  char buf[160];
  for (const TrackSample& s : track.samples) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g\n", s.t,
                  s.diameter, s.diameter_err, s.systole);
    os << buf;
  }
  return os.str();
}

}  // namespace tsurf
