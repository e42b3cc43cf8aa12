#pragma once

#include <string>
#include <vector>

#include "tsurf/surface.hpp"

namespace tsurf {

// Unit flow direction; (0, 1) is "vertical".
struct Direction {
  Vec2 u{0.0, 1.0};
  static Direction of_vector(Vec2 v);  // normalizes; throws on zero vector
  static Direction vertical() { return Direction{{0.0, 1.0}}; }
};

struct SurfacePoint {
  int face = 0;
  Vec2 p;
};

struct Chord {
  int face = 0;
  Vec2 entry, exit;
  double length() const { return dist(entry, exit); }
};

enum class Termination { completed, singular_hit };

struct TrajectorySegment {
  SurfacePoint start;
  Direction direction;
  std::vector<Chord> chords;  // consecutive chords connect across gluings
  double total_length = 0.0;
  Termination termination = Termination::completed;
  SurfacePoint end;
};

inline constexpr double kEpsSingDefault = 1e-9;
inline constexpr long long kMaxChords = 10'000'000;

// Trace the straight-line flow from `start` for the given length. The trace
// stops early (singular_hit) when the line passes within eps_sing of a cone
// point; marked regular vertex classes are crossed straight through.
TrajectorySegment trace_flow(const TranslationSurface& s, SurfacePoint start,
                             Direction dir, double length,
                             double eps_sing = kEpsSingDefault);

// Period of the closed orbit with rational slope p/q on the unit square
// torus: sqrt(p^2 + q^2). Throws IrrationalSlope when no rational slope with
// denominator <= 10^6 matches the direction.
double closed_orbit_length(const TranslationSurface& unit_torus,
                           Direction dir);

// Debug/plot dump: face,entry_x,entry_y,exit_x,exit_y,cum_length per chord.
std::string trajectory_csv(const TrajectorySegment& seg);

// Geodesic shot out of a vertex class: walks straight (through marked
// regular points) until it reaches a vertex class flagged in `stop_class`
// or exceeds max_len. Used by the systole search.
struct VertexShot {
  bool hit = false;
  int cls = -1;
  double length = 0.0;
};
VertexShot shoot_from_vertex(const TranslationSurface& s, int cls, Vec2 dir,
                             double max_len,
                             const std::vector<char>& stop_class);

}  // namespace tsurf
