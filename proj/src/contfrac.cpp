#include "tsurf/contfrac.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "tsurf/errors.hpp"
#include "tsurf/geometry.hpp"

namespace tsurf {

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long isqrt_floor(long long d) {
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(d)));
  while (r > 0 && r * r > d) --r;
  while ((r + 1) * (r + 1) <= d) ++r;
  return r;
}

}  // namespace

BigRational make_rational(BigInt num, BigInt den) {
  if (den == 0) throw NonPositiveInput("rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  BigInt g = boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

SlopeValue SlopeValue::of_rational(BigInt num, BigInt den) {
  SlopeValue v;
  v.kind = Kind::rational;
  v.rat = make_rational(std::move(num), std::move(den));
  v.x = static_cast<double>(v.rat.num) / static_cast<double>(v.rat.den);
  return v;
}

SlopeValue SlopeValue::of_surd(long long P, long long D, long long Q) {
  if (D <= 0 || Q == 0) throw NonPositiveInput("surd: need D > 0, Q != 0");
  const long long r = isqrt_floor(D);
  if (r * r == D) return of_rational(BigInt(P + r), BigInt(Q));
  SlopeValue v;
  v.kind = Kind::surd;
  v.P = P;
  v.D = D;
  v.Q = Q;
  v.x = (P + std::sqrt(static_cast<double>(D))) / Q;
  return v;
}

SlopeValue SlopeValue::of_real(double x) {
  SlopeValue v;
  v.kind = Kind::real;
  v.x = x;
  return v;
}

BigInt CFExpansion::max_quotient() const {
  BigInt m = 0;
  for (const BigInt& q : quotients) m = std::max(m, q);
  return m;
}

std::vector<std::pair<BigInt, BigInt>> CFExpansion::convergents() const {
  std::vector<std::pair<BigInt, BigInt>> out;
  BigInt p_prev = 1, q_prev = 0;  // p_{-1}/q_{-1}
  BigInt p = a0, q = 1;
  out.push_back({p, q});
  for (const BigInt& a : quotients) {
    const BigInt pn = a * p + p_prev;
    const BigInt qn = a * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = pn;
    q = qn;
    out.push_back({p, q});
  }
  return out;
}

std::optional<int> CFExpansion::period() const {
  const int n = depth();
  for (int off = 0; off <= std::min(4, n / 3); ++off)
    for (int p = 1; p <= (n - off) / 2; ++p) {
      bool ok = true;
      for (int i = off; i + p < n && ok; ++i)
        ok = quotients[i] == quotients[i + p];
      if (ok) return p;
    }
  return std::nullopt;
}

CFExpansion continued_fraction(const SlopeValue& v, int depth) {
  if (depth < 1) throw NonPositiveInput("continued_fraction: depth >= 1");
  CFExpansion out;
  out.requested_depth = depth;

  if (v.kind == SlopeValue::Kind::rational) {
    // Euclid on the exact fraction.
    BigInt num = v.rat.num, den = v.rat.den;
    out.a0 = floor_div(num, den);
    num -= out.a0 * den;  // now 0 <= num < den
    for (int k = 0; k < depth && num != 0; ++k) {
      std::swap(num, den);  // x -> 1/x
      const BigInt a = num / den;
      out.quotients.push_back(a);
      num -= a * den;
    }
    out.exact_terminated = num == 0;
    return out;
  }

  if (v.kind == SlopeValue::Kind::surd) {
    // Integer recurrence for (P + sqrt(D))/Q; rescale so Q | D - P^2.
    long long P = v.P, Q = v.Q, D = v.D;
    if ((D - P * P) % Q != 0) {
      const long long s = std::llabs(Q);
      P *= s;
      D *= s * s;
      Q *= s;
    }
    const long long r = isqrt_floor(D);
    for (int k = 0; k <= depth; ++k) {
      // floor((P + sqrt(D))/Q) computed exactly: sqrt(D) is irrational, so
      // P + sqrt(D) lies strictly between P + r and P + r + 1.
      const long long num = P + r + (Q < 0 ? 1 : 0);
      long long a = num / Q;
      if (num % Q != 0 && ((num < 0) != (Q < 0))) --a;
      if (k == 0)
        out.a0 = BigInt(a);
      else
        out.quotients.push_back(BigInt(a));
      P = a * Q - P;
      Q = (D - P * P) / Q;
    }
    return out;
  }

  // Floating input: Gauss map with a reliability cutoff on the convergent
  // denominators (quotients stop being trustworthy near 1/sqrt(eps)).
  double x = v.x;
  out.a0 = BigInt(static_cast<long long>(std::floor(x)));
  double frac = x - std::floor(x);
  long long q_prev = 0, q_cur = 1;
  for (int k = 0; k < depth; ++k) {
    if (frac < 1e-12) {
      out.exact_terminated = true;
      break;
    }
    const double y = 1.0 / frac;
    const long long a = static_cast<long long>(std::floor(y));
    const long long q_next = a * q_cur + q_prev;
    if (q_next > 67'108'864LL || q_next < 0) {
      out.precision_exhausted = true;
      break;
    }
    out.quotients.push_back(BigInt(a));
    q_prev = q_cur;
    q_cur = q_next;
    frac = y - a;
  }
  return out;
}

CFExpansion continued_fraction(double x, int depth) {
  return continued_fraction(SlopeValue::of_real(x), depth);
}

const char* to_string(SlopeVerdict v) {
  switch (v) {
    case SlopeVerdict::badly_approximable_evidence:
      return "badly_approximable_evidence";
    case SlopeVerdict::not_badly_approximable_evidence:
      return "not_badly_approximable_evidence";
    default:
      return "rational";
  }
}

SlopeClass is_badly_approximable(const SlopeValue& v, int depth,
                                 const BigInt& quotient_bound) {
  if (depth < 10)
    throw NonPositiveInput("is_badly_approximable: depth must be >= 10");
  const CFExpansion e = continued_fraction(v, depth);
  SlopeClass out;
  out.max_quotient_seen = e.max_quotient();
  out.depth = e.depth();
  out.requested_depth = depth;
  out.precision_exhausted = e.precision_exhausted;
  if (e.exact_terminated)
    out.verdict = SlopeVerdict::rational;
  else if (out.max_quotient_seen <= quotient_bound && e.depth() == depth &&
           !e.precision_exhausted)
    out.verdict = SlopeVerdict::badly_approximable_evidence;
  else
    out.verdict = SlopeVerdict::not_badly_approximable_evidence;
  return out;
}

BigRational liouville_number(int k) {
  if (k < 1 || k > 5)
    throw KTooLarge("liouville_number: k must be in [1, 5]");
  BigInt fact = 1;
  for (int n = 2; n <= k; ++n) fact *= n;  // k!
  BigInt den = 1;
  for (BigInt i = 0; i < fact; ++i) den *= 10;
  BigInt num = 0;
  BigInt f = 1;
  for (int n = 1; n <= k; ++n) {
    f *= n;  // n!
    BigInt p = 1;
    for (BigInt i = 0; i < fact - f; ++i) p *= 10;
    num += p;
  }
  return make_rational(num, den);
}

bool is_square_tiled(const TranslationSurface& s) {
  if (s.faces.empty()) return false;
  const double tol = 1e-9;
  for (const PolygonFace& f : s.faces) {
    if (f.size() != 4) return false;
    for (const Vec2& p : f.v)
      if (std::abs(p.x - std::round(p.x)) > tol ||
          std::abs(p.y - std::round(p.y)) > tol)
        return false;
    for (int e = 0; e < 4; ++e) {
      const Vec2 d = f.edge_vector(e);
      const bool unit_axis =
          (std::abs(std::abs(d.x) - 1) <= tol && std::abs(d.y) <= tol) ||
          (std::abs(d.x) <= tol && std::abs(std::abs(d.y) - 1) <= tol);
      if (!unit_axis) return false;
    }
  }
  return true;
}

const char* to_string(Prediction p) {
  switch (p) {
    case Prediction::superdense:
      return "superdense";
    case Prediction::not_superdense:
      return "not_superdense";
    default:
      return "out_of_family";
  }
}

Prediction beck_chen_predict(const TranslationSurface& s,
                             const SlopeValue& slope) {
  if (!is_square_tiled(s)) return Prediction::out_of_family;
  const SlopeClass c = is_badly_approximable(slope, 30, BigInt(10));
  return c.verdict == SlopeVerdict::badly_approximable_evidence
             ? Prediction::superdense
             : Prediction::not_superdense;
}

SlopeSpec parse_direction(const std::string& text) {
  SlopeSpec spec;
  spec.text = text;

  auto from_slope = [&spec](SlopeValue v) {
    spec.slope = v;
    spec.dir = Direction::of_vector({1.0, v.x});
  };

  if (text == "vertical") {
    spec.vertical = true;
    spec.dir = Direction::vertical();
    return spec;
  }
  if (text == "horizontal") {
    from_slope(SlopeValue::of_rational(0, 1));
    return spec;
  }
  if (text == "phi") {
    from_slope(SlopeValue::of_surd(1, 5, 2));
    return spec;
  }
  if (text == "sqrt2") {
    from_slope(SlopeValue::of_surd(0, 2, 1));
    return spec;
  }
  if (text == "sqrt3") {
    from_slope(SlopeValue::of_surd(0, 3, 1));
    return spec;
  }
  if (text.rfind("liouville_", 0) == 0) {
    int k = 0;
    try {
      const std::string tail = text.substr(10);
      size_t used = 0;
      k = std::stoi(tail, &used);
      if (used != tail.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw ParseError("direction: bad liouville index in '" + text + "'");
    }
    const BigRational r = liouville_number(k);
    from_slope(SlopeValue::of_rational(r.num, r.den));
    return spec;
  }

  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    // "a/b" is the direction vector (a, b); its slope is b/a.
    long long a = 0, b = 0;
    try {
      const std::string sa = text.substr(0, slash);
      const std::string sb = text.substr(slash + 1);
      size_t ua = 0, ub = 0;
      a = std::stoll(sa, &ua);
      b = std::stoll(sb, &ub);
      if (ua != sa.size() || ub != sb.size())
        throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw ParseError("direction: bad fraction '" + text + "'");
    }
    if (a == 0 && b == 0) throw ParseError("direction: zero vector");
    spec.dir = Direction::of_vector(
        {static_cast<double>(a), static_cast<double>(b)});
    if (a == 0) {
      spec.vertical = true;
    } else {
      spec.slope = SlopeValue::of_rational(BigInt(b), BigInt(a));
    }
    return spec;
  }

  try {
    size_t used = 0;
    const double x = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    from_slope(SlopeValue::of_real(x));
    return spec;
  } catch (const std::exception&) {
    throw ParseError("direction: cannot parse '" + text + "'");
  }
}

}  // namespace tsurf
