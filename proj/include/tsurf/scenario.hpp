#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsurf/contfrac.hpp"
#include "tsurf/density.hpp"
#include "tsurf/moduli.hpp"
#include "tsurf/surface.hpp"

namespace tsurf {

inline constexpr const char* kVersion = "0.1.0";

struct ScenarioConfig {
  std::string surface = "torus";
  std::string direction = "phi";
  std::vector<double> T_list = {4, 8, 16, 32};
  double t_max = 5.0;
  double dt = 0.25;
  double c_cap = 100.0;
  int n_random_starts = 5;
  std::uint64_t seed = 42;
  std::string outdir;  // empty: verify_theorem writes nothing
  double h = -1.0;     // <= 0: per-operation defaults
};

// Three-valued reading of one side of the equivalence.
enum class Evidence { positive, negative, inconclusive };
const char* to_string(Evidence e);

// consistent iff both sides agree (positive-positive or negative-negative);
// inconclusive as soon as either side is; inconsistent otherwise.
std::string agreement_of(Evidence density_side, Evidence geodesic_side);

struct TheoremReport {
  ScenarioConfig config;
  TranslationSurface surface;
  SlopeSpec direction;

  DensityProfile profile;
  Evidence superdense = Evidence::inconclusive;

  DiameterTrack track;
  BoundednessVerdict bounded;

  bool forward_ran = false;  // only when both sides are positive
  ForwardReport forward;
  bool backward_ran = false;  // only when the density side is positive
  BackwardReport backward;

  std::string agreement;  // consistent | inconsistent | inconclusive
};

// Full pipeline on one (surface, direction) pair: superdensity scan and
// geodesic track on the same direction, then the forward constant check
// (budget c = 2*D_max^2 at the largest horizon) when both sides came back
// positive and the backward diameter bound when the density side did.
// Writes the report file set when config.outdir is non-empty.
TheoremReport verify_theorem(const ScenarioConfig& config);

// JSON object with the fixed keys {direction, superdense_evidence,
// c_hat_by_T, bounded_verdict, D_max, lemma_forward_pass, backward_bound,
// agreement} plus a "caveats" list for finite-horizon warnings.
std::string theorem_report_json(const TheoremReport& r);

// Deterministic file set written atomically into outdir (created if
// missing): surface.json, track.csv, profile.csv, theorem.json,
// run-meta.json (seed, parameters, version).
void emit_reports(const TheoremReport& r, const std::string& outdir);

}  // namespace tsurf
