#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tsurf/flow.hpp"
#include "tsurf/mesh.hpp"
#include "tsurf/moduli.hpp"
#include "tsurf/surface.hpp"

namespace tsurf {

struct RadiusEstimate {
  double value = 0;
  double error = 0;  // 5h
};

// Max over mesh nodes of the flat distance to the chord set, via
// multi-source shortest paths seeded along the chords at spacing h/2.
RadiusEstimate covering_radius(const TranslationSurface& s,
                               const TrajectorySegment& seg, double h);

// Geometric grid 0.01 * 1.1^k, capped at c_cap.
std::vector<double> default_c_grid(double c_cap);

struct ScanStart {
  SurfacePoint p;
  bool is_random = false;
};

// Two deterministic interior points (face-0 centroid and the midpoint toward
// its first vertex) plus n_random seeded area-uniform points.
std::vector<ScanStart> default_starts(const TranslationSurface& s,
                                      int n_random, std::uint64_t seed);

struct ScanEntry {
  double T = 0;
  double h = 0;
  double c_hat = 0;  // least feasible grid value; c_cap sentinel when capped
  bool capped = false;
  bool truncated = false;  // singular hit persisted after one resample
  double radius_at_chat = 0;
  int starts_tested = 0;
};

struct DensityProfile {
  Direction direction;
  std::vector<double> horizons;
  std::vector<ScanEntry> entries;
  double c_cap = 0;
  std::vector<SurfacePoint> starts;
  std::uint64_t seed = 0;

  bool any_capped() const;
  bool any_truncated() const;
  // All horizons produced finite, untruncated estimates.
  bool superdense_evidence() const;
  double max_finite_c() const;
};

// For each T: h = min(1/(4T), systole/5), one trace per start to length
// c_cap*T, and a monotone search for the least grid c whose prefix [0, cT]
// has covering radius <= 1/T at every start. Singular truncations resample
// the start once, then record the sentinel.
DensityProfile superdensity_scan(const TranslationSurface& s,
                                 const Direction& dir,
                                 const std::vector<double>& T_list,
                                 const std::vector<ScanStart>& starts,
                                 double c_cap, std::uint64_t seed);

// CSV with header T,c_hat,capped,radius_at_chat,starts_tested,h.
std::string profile_csv(const DensityProfile& p);

struct ForwardBudget {
  double D = 0;
  double T = 0;
  double N = 0;  // D*T
  double c = 0;  // 2*D^2
};

struct ForwardReport {
  ForwardBudget budget;
  double radius = 0;
  double threshold = 0;  // 1/T + 5h
  double h = 0;
  bool truncated = false;
  bool pass = false;
};

// Traces [0, 2*D_max^2*T] and checks the covering radius against 1/T + 5h.
// h <= 0 picks min(1/(4T), systole/5).
ForwardReport lemma_forward_verify(const TranslationSurface& s,
                                   const Direction& dir, double T,
                                   double D_max, double h = -1.0);

// max{4c, c+2}; NonPositiveC for c <= 0.
double lemma_backward_bound(double c);

// (D, D') = (sqrt((cT/t)^2 + (2t/T)^2), cT/t + 2/(Tt)).
std::pair<double, double> backward_diameter_candidates(double c, double T,
                                                       double t_tilde);

struct BackwardSample {
  double t = 0;
  double diameter = 0;
  double diameter_err = 0;
  bool pass = false;
};

struct BackwardReport {
  double c = 0;
  double bound = 0;
  std::vector<BackwardSample> samples;
  bool all_pass = false;
};

// Every sampled diameter must stay within lemma_backward_bound(c) plus its
// own metric error.
BackwardReport check_track_against_bound(const DiameterTrack& track, double c);

// Runs geodesic_track and applies the bound with c = max finite c_hat of the
// profile. Requires an all-finite profile.
BackwardReport empirical_backward_check(const TranslationSurface& s,
                                        const Direction& dir,
                                        const DensityProfile& profile,
                                        double t_max, double dt);

}  // namespace tsurf
