#pragma once

#include <string>
#include <vector>

#include "tsurf/flow.hpp"
#include "tsurf/surface.hpp"

namespace tsurf {

// g_t = diag(e^t, e^-t): contracts the vertical direction for t > 0.
Mat2 geodesic_matrix(double t);

// Rotation R (det 1) with R * direction = (0, 1) within 1e-12.
Mat2 rotate_to_vertical(const Direction& d);

// Linear action on every vertex coordinate; gluings carry over. Rejects
// orientation-reversing or singular matrices.
TranslationSurface apply_matrix(const TranslationSurface& s, const Mat2& m);

// Isometric re-presentation with short edges: Lagrange-reduced basis for
// parallelogram tori, Delaunay re-embedding (triangles become the face set)
// in general. Identity on presentations that are already reduced.
TranslationSurface renormalize(const TranslationSurface& s);

struct TrackSample {
  double t = 0;
  double diameter = 0;
  double diameter_err = 0;
  double systole = 0;
};

struct DiameterTrack {
  std::vector<TrackSample> samples;
  double t_max = 0;
  double dt = 0;
  double h = 0;  // requested spacing; samples clamp to systole_t / 5
};

// Rotates `direction` to vertical, then samples metrics of
// renormalize(g_t * surface) for t = 0, dt, ..., t_max.
// h <= 0 picks the default 0.01 * systole of the rotated surface.
DiameterTrack geodesic_track(const TranslationSurface& s, const Direction& dir,
                             double t_max, double dt, double h = -1.0);

enum class Boundedness { bounded_evidence, divergence_evidence, inconclusive };
const char* to_string(Boundedness b);

struct BoundednessVerdict {
  Boundedness verdict = Boundedness::inconclusive;
  double D_max = 0;
  double growth_rate = 0;  // fitted rate of log diameter over the last half
};

// Finite-horizon reading of a track: divergence evidence when the fitted
// exponential rate over the last half is >= 0.5; bounded evidence when the
// last-half maximum stays within 1.2x the full-track median (and the rate
// stays below 0.5); inconclusive otherwise. Needs >= 8 samples.
BoundednessVerdict boundedness_diagnostic(const DiameterTrack& track);

// CSV with header t,diameter,diameter_err,systole.
std::string track_csv(const DiameterTrack& track);

}  // namespace tsurf
