#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsurf/flow.hpp"
#include "tsurf/surface.hpp"

namespace tsurf {

using BigInt = boost::multiprecision::cpp_int;

// Reduced fraction with positive denominator.
struct BigRational {
  BigInt num = 0;
  BigInt den = 1;
};
BigRational make_rational(BigInt num, BigInt den);

struct CFExpansion {
  BigInt a0 = 0;
  std::vector<BigInt> quotients;  // a1, a2, ... (all >= 1)
  bool exact_terminated = false;  // rational input, fully expanded
  bool precision_exhausted = false;
  int requested_depth = 0;

  int depth() const { return static_cast<int>(quotients.size()); }
  BigInt max_quotient() const;
  // Convergents p_k/q_k, k = 0 .. depth (p_0/q_0 = a0/1).
  std::vector<std::pair<BigInt, BigInt>> convergents() const;
  // Smallest visible period of the quotient tail (offset 0..4), if any.
  std::optional<int> period() const;
};

// A slope that may be known exactly: a rational, a quadratic surd
// (P + sqrt(D))/Q, or just a floating-point value.
struct SlopeValue {
  enum class Kind { rational, surd, real };
  Kind kind = Kind::real;
  BigRational rat;             // Kind::rational
  long long P = 0;             // Kind::surd: (P + sqrt(D)) / Q
  long long D = 0;
  long long Q = 1;
  double x = 0;                // approximation, always set

  static SlopeValue of_rational(BigInt num, BigInt den);
  static SlopeValue of_surd(long long P, long long D, long long Q);
  static SlopeValue of_real(double x);
};

// Euclidean / Gauss-map expansion to the requested depth. Exact inputs
// expand exactly (rationals terminate; surds run the integer recurrence);
// floating input stops early with precision_exhausted once the convergent
// denominators outgrow double precision.
CFExpansion continued_fraction(const SlopeValue& v, int depth);
CFExpansion continued_fraction(double x, int depth);

enum class SlopeVerdict {
  badly_approximable_evidence,
  not_badly_approximable_evidence,
  rational,
};
const char* to_string(SlopeVerdict v);

struct SlopeClass {
  SlopeVerdict verdict = SlopeVerdict::rational;
  BigInt max_quotient_seen = 0;
  int depth = 0;  // achieved
  int requested_depth = 0;
  bool precision_exhausted = false;
};

// Evidence verdict: rational iff the expansion terminated within `depth`;
// badly-approximable evidence requires every partial quotient <= bound at the
// full requested depth.
SlopeClass is_badly_approximable(const SlopeValue& v, int depth,
                                 const BigInt& quotient_bound);

// Sum over n = 1..k of 10^(-n!), exact. KTooLarge outside 1 <= k <= 5.
BigRational liouville_number(int k);

// All faces are unit axis-aligned squares with integer-grid corners.
bool is_square_tiled(const TranslationSurface& s);

enum class Prediction { superdense, not_superdense, out_of_family };
const char* to_string(Prediction p);

// Square-tiled surfaces: superdense iff the slope is badly approximable
// (depth 30, quotient bound 10). Everything else is out_of_family.
Prediction beck_chen_predict(const TranslationSurface& s,
                             const SlopeValue& slope);

// Parsed direction with its slope (dy/dx) kept exact where possible.
// Accepts: "phi", "sqrt2", "sqrt3", "liouville_K" (1..5), "a/b" meaning the
// direction vector (a, b), "vertical", "horizontal", or a decimal slope.
struct SlopeSpec {
  std::string text;
  Direction dir;
  SlopeValue slope;      // undefined when vertical
  bool vertical = false;
};
SlopeSpec parse_direction(const std::string& text);

}  // namespace tsurf
