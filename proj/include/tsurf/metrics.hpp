#pragma once

#include "tsurf/mesh.hpp"
#include "tsurf/surface.hpp"

namespace tsurf {

struct DiameterEstimate {
  double value = 0;
  double error = 0;  // covers graph stretch, sampling gap, and source stride
  int stride = 1;    // source subsampling actually used
  int sources = 0;
};

struct SurfaceMetrics {
  double diameter = 0;
  double diameter_err = 0;
  double systole = 0;
  double systole_err = 0;
  double area = 0;
  double mesh_spacing = 0;
};

// Length of the shortest saddle connection (shortest geodesic between
// singular vertex classes; between marked classes when the surface has no
// singularities). Exact up to the verification tolerance ~1e-7 * scale.
double systole(const TranslationSurface& s);

// Max graph eccentricity over a stride-subsampled source set (all nodes are
// targets). Sources are capped at max_sources; the stride chosen and the
// resulting error bound (0.71*stride + 1.8)*h are reported.
DiameterEstimate mesh_diameter(const MeshGraph& m, int max_sources = 3000);

// Diameter of the flat metric at resolution h (error <= 5h for the default
// source budget on surfaces up to ~50k cells).
DiameterEstimate diameter(const TranslationSurface& s, double h);

SurfaceMetrics compute_metrics(const TranslationSurface& s, double h);

}  // namespace tsurf
