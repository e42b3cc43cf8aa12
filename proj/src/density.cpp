#include "tsurf/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "tsurf/errors.hpp"
#include "tsurf/geometry.hpp"
#include "tsurf/metrics.hpp"

namespace tsurf {

namespace {

// Trajectory samples snapped to mesh nodes, with cumulative arc length, so
// prefix covering radii reuse one trace and one snap pass.
struct SampledTrace {
  bool truncated = false;
  double total = 0;
  std::vector<int> node;
  std::vector<double> offset;
  std::vector<double> at;
};

void sample_chords(const MeshGraph& mesh, const std::vector<Chord>& chords,
                   SampledTrace& out) {
  const double step = mesh.h / 2;
  double cum = 0;
  for (const Chord& c : chords) {
    const double len = c.length();
    const Vec2 u = len > 0 ? (c.exit - c.entry) / len : Vec2{0, 0};
    for (double s = 0;; s += step) {
      if (s > len) break;
      const auto [n, d] = mesh.snap(c.face, c.entry + s * u);
      out.node.push_back(n);
      out.offset.push_back(d);
      out.at.push_back(cum + s);
      if (len == 0) break;
    }
    cum += len;
  }
  // Always include the exact trajectory endpoint.
  if (!chords.empty()) {
    const Chord& c = chords.back();
    const auto [n, d] = mesh.snap(c.face, c.exit);
    out.node.push_back(n);
    out.offset.push_back(d);
    out.at.push_back(cum);
  }
  out.total = cum;
}

// Covering radius of the prefix of length <= L, using precomputed samples.
double prefix_radius(const MeshGraph& mesh, const SampledTrace& tr, double L,
                     std::vector<double>& dist) {
  std::vector<std::pair<int, double>> seeds;
  seeds.reserve(tr.node.size());
  for (size_t i = 0; i < tr.node.size(); ++i) {
    if (tr.at[i] > L + 1e-12) break;  // samples are in arc-length order
    seeds.push_back({tr.node[i], tr.offset[i]});
  }
  if (seeds.empty()) seeds.push_back({tr.node.front(), tr.offset.front()});
  mesh_distances_into(mesh, seeds, dist);
  double r = 0;
  for (const double d : dist) {
    if (std::isinf(d)) throw Error("covering radius: mesh is disconnected");
    r = std::max(r, d);
  }
  return r;
}

SurfacePoint random_interior_point(const TranslationSurface& s,
                                   std::mt19937_64& rng) {
  std::vector<double> acc;
  double total = 0;
  for (const PolygonFace& f : s.faces) {
    total += f.area();
    acc.push_back(total);
  }
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double margin = 1e-6 * surface_scale(s);
  for (int tries = 0; tries < 10000; ++tries) {
    const double pick = unif(rng) * total;
    const int f = static_cast<int>(
        std::lower_bound(acc.begin(), acc.end(), pick) - acc.begin());
    Vec2 lo, hi;
    lo = hi = s.faces[f].v[0];
    for (const Vec2& p : s.faces[f].v) {
      lo.x = std::min(lo.x, p.x);
      lo.y = std::min(lo.y, p.y);
      hi.x = std::max(hi.x, p.x);
      hi.y = std::max(hi.y, p.y);
    }
    const Vec2 p{lo.x + unif(rng) * (hi.x - lo.x),
                 lo.y + unif(rng) * (hi.y - lo.y)};
    if (!point_in_polygon(p, s.faces[f].v, 0.0)) continue;
    bool clear = true;
    for (const Vec2& v : s.faces[f].v)
      clear = clear && dist(p, v) > margin;
    if (clear) return {f, p};
  }
  throw Error("density: could not sample an interior start point");
}

}  // namespace

RadiusEstimate covering_radius(const TranslationSurface& s0,
                               const TrajectorySegment& seg, double h) {
  const TranslationSurface s = s0.analyzed ? s0 : analyzed_copy(s0);
  const MeshGraph mesh = build_mesh(s, h);
  SampledTrace tr;
  if (seg.chords.empty()) {
    const auto [n, d] = mesh.snap(seg.start.face, seg.start.p);
    tr.node.push_back(n);
    tr.offset.push_back(d);
    tr.at.push_back(0);
  } else {
    sample_chords(mesh, seg.chords, tr);
  }
  std::vector<double> dist;
  RadiusEstimate est;
  est.value =
      prefix_radius(mesh, tr, std::numeric_limits<double>::infinity(), dist);
  est.error = 5 * h;
  return est;
}

std::vector<double> default_c_grid(double c_cap) {
  if (c_cap <= 0) throw NonPositiveC("default_c_grid: cap must be > 0");
  std::vector<double> grid;
  for (double c = 0.01; c <= c_cap * (1 + 1e-12); c *= 1.1)
    grid.push_back(c);
  if (grid.empty()) grid.push_back(c_cap);  // caps below the grid base
  return grid;
}

std::vector<ScanStart> default_starts(const TranslationSurface& s,
                                      int n_random, std::uint64_t seed) {
  std::vector<ScanStart> starts;
  const PolygonFace& f0 = s.faces[0];
  Vec2 centroid{0, 0};
  for (const Vec2& p : f0.v) centroid += p;
  centroid = centroid / static_cast<double>(f0.size());
  starts.push_back({{0, centroid}, false});
  starts.push_back({{0, 0.5 * (centroid + f0.v[0])}, false});
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n_random; ++i)
    starts.push_back({random_interior_point(s, rng), true});
  return starts;
}

bool DensityProfile::any_capped() const {
  for (const ScanEntry& e : entries)
    if (e.capped) return true;
  return false;
}

bool DensityProfile::any_truncated() const {
  for (const ScanEntry& e : entries)
    if (e.truncated) return true;
  return false;
}

bool DensityProfile::superdense_evidence() const {
  return !entries.empty() && !any_capped() && !any_truncated();
}

double DensityProfile::max_finite_c() const {
  double m = 0;
  for (const ScanEntry& e : entries)
    if (!e.capped && !e.truncated) m = std::max(m, e.c_hat);
  return m;
}

DensityProfile superdensity_scan(const TranslationSurface& s0,
                                 const Direction& dir,
                                 const std::vector<double>& T_list,
                                 const std::vector<ScanStart>& starts,
                                 double c_cap, std::uint64_t seed) {
  const TranslationSurface s = s0.analyzed ? s0 : analyzed_copy(s0);
  if (T_list.empty()) throw NonPositiveInput("scan: empty T list");
  for (size_t i = 0; i < T_list.size(); ++i) {
    if (T_list[i] <= 0) throw NonPositiveInput("scan: T must be positive");
    if (i && T_list[i] <= T_list[i - 1])
      throw NonPositiveInput("scan: T list must be increasing");
  }
  if (starts.size() < 3) throw NonPositiveInput("scan: need >= 3 starts");

  DensityProfile profile;
  profile.direction = dir;
  profile.horizons = T_list;
  profile.c_cap = c_cap;
  profile.seed = seed;
  for (const ScanStart& st : starts) profile.starts.push_back(st.p);

  const std::vector<double> grid = default_c_grid(c_cap);
  const double sys = systole(s);
  std::vector<double> dist;

  for (size_t ti = 0; ti < T_list.size(); ++ti) {
    const double T = T_list[ti];
    const double h = std::min(1.0 / (4 * T), sys / 5.0);
    const MeshGraph mesh = build_mesh(s, h, sys);
    const double L_full = c_cap * T;

    ScanEntry entry;
    entry.T = T;
    entry.h = h;
    entry.starts_tested = static_cast<int>(starts.size());

    int worst_k = -1;  // max over starts of the least feasible grid index
    bool capped = false, truncated = false;
    std::vector<SampledTrace> traces(starts.size());

    for (size_t si = 0; si < starts.size(); ++si) {
      SurfacePoint start = starts[si].p;
      SampledTrace& tr = traces[si];
      for (int attempt = 0;; ++attempt) {
        const TrajectorySegment seg = trace_flow(s, start, dir, L_full);
        tr = SampledTrace{};
        tr.truncated = seg.termination == Termination::singular_hit;
        sample_chords(mesh, seg.chords, tr);
        if (!tr.truncated || attempt >= 1) break;
        // Singular hit: resample this start once (deterministically).
        std::mt19937_64 rng(seed * 1000003ULL + ti * 101 + si);
        start = random_interior_point(s, rng);
      }
      if (tr.truncated) {
        truncated = true;
        capped = true;
        continue;
      }
      // Least grid index whose prefix covers within 1/T. The radius is
      // exactly non-increasing in the prefix on a fixed mesh, so bisect.
      const double target = 1.0 / T;
      auto feasible = [&](int k) {
        return prefix_radius(mesh, tr, grid[k] * T, dist) <= target;
      };
      if (!feasible(static_cast<int>(grid.size()) - 1)) {
        capped = true;
        continue;
      }
      int lo = 0, hi = static_cast<int>(grid.size()) - 1;
      while (lo < hi) {
        const int mid = (lo + hi) / 2;
        if (feasible(mid))
          hi = mid;
        else
          lo = mid + 1;
      }
      worst_k = std::max(worst_k, lo);
    }

    entry.capped = capped;
    entry.truncated = truncated;
    entry.c_hat = capped ? c_cap : grid[worst_k];
    double r = 0;
    for (size_t si = 0; si < starts.size(); ++si) {
      if (traces[si].node.empty()) continue;
      r = std::max(r, prefix_radius(mesh, traces[si],
                                    (capped ? c_cap : entry.c_hat) * T, dist));
    }
    entry.radius_at_chat = r;
    profile.entries.push_back(entry);
  }
  return profile;
}

std::string profile_csv(const DensityProfile& p) {
  std::ostringstream os;
  os << "T,c_hat,capped,radius_at_chat,starts_tested,h\n";
  char buf[200];
  for (const ScanEntry& e : p.entries) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%d,%.12g,%d,%.12g\n", e.T,
                  e.c_hat, e.capped ? 1 : 0, e.radius_at_chat, e.starts_tested,
                  e.h);
    os << buf;
  }
  return os.str();
}

ForwardReport lemma_forward_verify(const TranslationSurface& s0,
                                   const Direction& dir, double T,
                                   double D_max, double h) {
  if (T <= 0 || D_max <= 0)
    throw NonPositiveInput("lemma_forward_verify: T and D_max must be > 0");
  const TranslationSurface s = s0.analyzed ? s0 : analyzed_copy(s0);
  const double sys = systole(s);
  ForwardReport rep;
  rep.h = h > 0 ? h : std::min(1.0 / (4 * T), sys / 5.0);
  rep.budget = {D_max, T, D_max * T, 2 * D_max * D_max};

  const MeshGraph mesh = build_mesh(s, rep.h, sys);
  const std::vector<ScanStart> starts = default_starts(s, 0, 0);
  const double L = rep.budget.c * T;
  const TrajectorySegment seg = trace_flow(s, starts[0].p, dir, L);
  rep.truncated = seg.termination == Termination::singular_hit;

  SampledTrace tr;
  sample_chords(mesh, seg.chords, tr);
  std::vector<double> dist;
  rep.radius =
      prefix_radius(mesh, tr, std::numeric_limits<double>::infinity(), dist);
  rep.threshold = 1.0 / T + 5 * rep.h;
  rep.pass = rep.radius <= rep.threshold;
  return rep;
}

double lemma_backward_bound(double c) {
  if (c <= 0) throw NonPositiveC("lemma_backward_bound: c must be > 0");
  return std::max(4 * c, c + 2);
}

std::pair<double, double> backward_diameter_candidates(double c, double T,
                                                       double t_tilde) {
  if (c <= 0 || T <= 0 || t_tilde <= 0)
    throw NonPositiveInput(
        "backward_diameter_candidates: all inputs must be > 0");
  const double D = std::hypot(c * T / t_tilde, 2 * t_tilde / T);
  const double Dp = c * T / t_tilde + 2 / (T * t_tilde);
  return {D, Dp};
}

BackwardReport check_track_against_bound(const DiameterTrack& track,
                                         double c) {
  BackwardReport rep;
  rep.c = c;
  rep.bound = lemma_backward_bound(c);
  rep.all_pass = true;
  for (const TrackSample& s : track.samples) {
    BackwardSample b{s.t, s.diameter, s.diameter_err,
                     s.diameter <= rep.bound + s.diameter_err};
    rep.all_pass = rep.all_pass && b.pass;
    rep.samples.push_back(b);
  }
  return rep;
}

BackwardReport empirical_backward_check(const TranslationSurface& s,
                                        const Direction& dir,
                                        const DensityProfile& profile,
                                        double t_max, double dt) {
  if (!profile.superdense_evidence())
    throw Error("empirical_backward_check: profile is not all-finite");
  const DiameterTrack track = geodesic_track(s, dir, t_max, dt);
  return check_track_against_bound(track, profile.max_finite_c());
}

}  // namespace tsurf
