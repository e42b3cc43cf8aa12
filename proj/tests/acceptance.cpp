// Acceptance gate: eleven end-to-end checks against closed forms and
// independent oracles. Prints one [PASS]/[FAIL] line per criterion and exits
// with the number of failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tsurf/builders.hpp"
#include "tsurf/contfrac.hpp"
#include "tsurf/density.hpp"
#include "tsurf/errors.hpp"
#include "tsurf/flow.hpp"
#include "tsurf/mesh.hpp"
#include "tsurf/metrics.hpp"
#include "tsurf/moduli.hpp"
#include "tsurf/scenario.hpp"
#include "tsurf/surface_io.hpp"
#include "tsurf/triangulation.hpp"

using namespace tsurf;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what);
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

void criterion(int n, const std::string& label,
               const std::function<void()>& body) {
  const auto t0 = Clock::now();
  try {
    body();
    std::printf("[PASS] criterion %d: %s (%.1fs)\n", n, label.c_str(),
                seconds_since(t0));
  } catch (const std::exception& e) {
    ++failures;
    std::printf("[FAIL] criterion %d: %s — %s (%.1fs)\n", n, label.c_str(),
                e.what(), seconds_since(t0));
  }
  std::fflush(stdout);
}

// Shared between criteria 5, 6 and 7: the golden-direction track and profile.
std::optional<DiameterTrack> golden_track;
std::optional<DensityProfile> golden_profile;
double golden_D_max = 0;

void c1_geometry_kernel() {
  const double h = 0.01;
  const auto t0 = Clock::now();
  const auto m1 = compute_metrics(load_surface("torus"), h);
  const double unit_secs = seconds_since(t0);
  check(std::abs(m1.diameter - std::sqrt(2.0) / 2) <= 5 * h,
        "unit torus diameter " + num(m1.diameter) + " vs sqrt(2)/2");
  check(std::abs(m1.systole - 1.0) <= 1e-9,
        "unit torus systole " + num(m1.systole) + " vs 1");
  check(unit_secs < 10.0, "unit torus metrics took " + num(unit_secs) + "s");

  const auto m2 = compute_metrics(load_surface("torus:2x0.5"), h);
  check(std::abs(m2.diameter - std::sqrt(17.0) / 4) <= 5 * h,
        "2x0.5 torus diameter " + num(m2.diameter) + " vs sqrt(17)/4");
  check(std::abs(m2.systole - 0.5) <= 1e-9,
        "2x0.5 torus systole " + num(m2.systole) + " vs 0.5");
}

void c2_delaunay_edge_bound() {
  for (const std::string& name : builtin_surface_names()) {
    const auto s = load_surface(name);
    const auto tri = delaunay_triangulate(s);
    const int bad = delaunay_violations(tri);
    check(bad == 0, name + ": " + std::to_string(bad) + " Delaunay violations");
    const auto d = diameter(s, 0.05 * surface_scale(s));
    const double bound = 2 * (d.value + d.error);
    check(tri.max_edge() <= bound, name + ": edge " + num(tri.max_edge()) +
                                       " exceeds 2*(diameter+err) = " +
                                       num(bound));
  }
}

void c3_closed_orbit_return() {
  const auto s = load_surface("torus");
  const SurfacePoint start{0, {0.25, 0.3}};
  const struct {
    double dx, dy, len;
  } cases[] = {{1, 1, std::sqrt(2.0)},
               {2, 3, std::sqrt(13.0)},
               {5, 8, std::sqrt(89.0)}};
  for (const auto& cs : cases) {
    const auto t0 = Clock::now();
    const auto dir = Direction::of_vector({cs.dx, cs.dy});
    const double period = closed_orbit_length(s, dir);
    check(std::abs(period - cs.len) <= 1e-9,
          "period " + num(period) + " vs " + num(cs.len));
    const auto seg = trace_flow(s, start, dir, period);
    check(seg.termination == Termination::completed, "trace did not finish");
    const double err = oracle::torus_point_distance(seg.end.p, start.p, {1, 0},
                                                    {0, 1});
    check(err <= 1e-8, "endpoint error " + num(err) + " after length " +
                           num(cs.len));
    const double secs = seconds_since(t0);
    check(secs < 1.0, "slope took " + num(secs) + "s");
  }
}

void c4_divergent_side() {
  const auto s = load_surface("torus");
  const auto vert = Direction::vertical();

  const auto track = geodesic_track(s, vert, 3.0, 0.25);
  for (const double t : {1.0, 2.0, 3.0}) {
    const auto& smp = track.samples[static_cast<size_t>(t / 0.25)];
    check(smp.t == t, "sample grid misaligned");
    const double h_eff = std::min(track.h, smp.systole / 5.0);
    const double want = std::sqrt(std::exp(2 * t) + std::exp(-2 * t)) / 2;
    check(std::abs(smp.diameter - want) <= 5 * h_eff + 1e-6,
          "diameter(" + num(t) + ") = " + num(smp.diameter) + " vs " +
              num(want));
  }
  const auto verdict = boundedness_diagnostic(track);
  check(verdict.verdict == Boundedness::divergence_evidence,
        std::string("verdict ") + to_string(verdict.verdict));
  check(std::abs(verdict.growth_rate - 1.0) <= 0.1,
        "growth rate " + num(verdict.growth_rate) + " vs 1.0");

  const auto profile = superdensity_scan(s, vert, {4.0, 8.0},
                                         default_starts(s, 1, 17), 100.0, 17);
  for (const auto& e : profile.entries) {
    check(e.capped, "T=" + num(e.T) + " unexpectedly found finite c");
    check(std::abs(e.radius_at_chat - 0.5) <= 5 * e.h,
          "T=" + num(e.T) + " closed-orbit radius " + num(e.radius_at_chat) +
              " vs 0.5");
  }
}

void c5_bounded_side() {
  const auto t0 = Clock::now();
  const auto s = load_surface("torus");
  const auto spec = parse_direction("phi");

  const auto track = geodesic_track(s, spec.dir, 5.0, 0.25);
  const Mat2 R = rotate_to_vertical(spec.dir);
  for (const auto& smp : track.samples) {
    const Mat2 gt = geodesic_matrix(smp.t);
    const double Dstar = oracle::lattice_covering_radius(
        gt.apply(R.apply({1, 0})), gt.apply(R.apply({0, 1})));
    const double h_eff = std::min(track.h, smp.systole / 5.0);
    check(std::abs(smp.diameter - Dstar) <= 5 * h_eff,
          "t=" + num(smp.t) + " diameter " + num(smp.diameter) +
              " vs lattice oracle " + num(Dstar));
  }
  const auto verdict = boundedness_diagnostic(track);
  check(verdict.verdict == Boundedness::bounded_evidence,
        std::string("verdict ") + to_string(verdict.verdict));

  const auto profile = superdensity_scan(
      s, spec.dir, {4.0, 8.0, 16.0, 32.0}, default_starts(s, 5, 42), 100.0, 42);
  check(profile.superdense_evidence(), "scan did not stay finite");
  std::vector<double> cs;
  for (const auto& e : profile.entries) cs.push_back(e.c_hat);
  std::sort(cs.begin(), cs.end());
  const double median = (cs[1] + cs[2]) / 2;
  check(cs.back() / median <= 1.5,
        "c_hat max/median " + num(cs.back() / median) + " > 1.5");

  golden_track = track;
  golden_profile = profile;
  golden_D_max = verdict.D_max;

  const double secs = seconds_since(t0);
  check(secs < 300.0, "bounded-side run took " + num(secs) + "s");
}

void c6_forward_budget() {
  check(golden_track.has_value(), "prerequisite track missing");
  const auto s = load_surface("torus");
  const auto dir = parse_direction("phi").dir;
  for (const double T : {8.0, 16.0}) {
    const auto rep = lemma_forward_verify(s, dir, T, golden_D_max);
    check(!rep.truncated, "T=" + num(T) + " trace hit a singularity");
    check(rep.radius <= 1.0 / T + 5 * rep.h,
          "T=" + num(T) + " radius " + num(rep.radius) + " vs 1/T+5h = " +
              num(1.0 / T + 5 * rep.h));
    check(rep.pass, "T=" + num(T) + " reported fail");
  }
}

void c7_backward_bound() {
  check(golden_track.has_value() && golden_profile.has_value(),
        "prerequisite track/profile missing");
  const double c = golden_profile->max_finite_c();
  check(c > 0, "no finite c from the scan");
  const auto rep = check_track_against_bound(*golden_track, c);
  check(rep.bound == std::max(4 * c, c + 2), "bound mismatch");
  for (const auto& smp : rep.samples)
    check(smp.pass, "t=" + num(smp.t) + " diameter " + num(smp.diameter) +
                        " above bound " + num(rep.bound) + " + err");
  check(rep.all_pass, "bound audit failed");

  check(lemma_backward_bound(0.1) == 0.1 + 2, "bound(0.1) != 2.1");
  check(lemma_backward_bound(1.0) == 4.0, "bound(1) != 4");
  check(lemma_backward_bound(2.0) == 8.0, "bound(2) != 8");
}

void c8_square_tiled_contrast() {
  const auto t0 = Clock::now();
  const auto L3 = load_surface("st-L3");
  const auto sq2 = parse_direction("sqrt2");
  check(beck_chen_predict(L3, sq2.slope) == Prediction::superdense,
        "sqrt2 slope not predicted superdense");

  const std::vector<double> Ts{4.0, 8.0, 16.0};
  const auto base =
      superdensity_scan(L3, sq2.dir, Ts, default_starts(L3, 3, 21), 100.0, 21);
  check(base.superdense_evidence(), "sqrt2 scan did not stay finite");

  // Slope 2001/2003 = [0; 1, 1000, 2]: a giant partial quotient makes the
  // orbit shadow a short closed one for a very long time.
  const auto inj = parse_direction("2003/2001");
  const auto cf = continued_fraction(inj.slope, 10);
  check(cf.max_quotient() >= 1000, "injected slope lost its big quotient");
  check(beck_chen_predict(L3, inj.slope) == Prediction::not_superdense,
        "rational slope not predicted non-superdense");

  const auto stall =
      superdensity_scan(L3, inj.dir, Ts, default_starts(L3, 3, 21), 100.0, 21);
  bool contrast = false;
  std::string detail;
  for (size_t i = 0; i < Ts.size(); ++i) {
    const auto& e = stall.entries[i];
    detail += (i ? ", " : "") + std::string("T=") + num(Ts[i]) + ": " +
              (e.capped ? std::string("capped")
                        : num(e.c_hat) + " vs " + num(base.entries[i].c_hat));
    if (e.capped || e.c_hat >= 5 * base.entries[i].c_hat) contrast = true;
  }
  check(contrast, "no 5x stall at any horizon (" + detail + ")");

  const double secs = seconds_since(t0);
  check(secs < 600.0, "contrast run took " + num(secs) + "s");
}

// Exact integer check of |x - p/q| < 1/(q q') for x = (P + sqrt(D))/Q:
// equivalent to (A q' - Q)^2 < D (q q')^2 < (A q' + Q)^2 with A = pQ - Pq.
void check_surd_convergents(long long P, long long D, long long Q,
                            const CFExpansion& cf, const std::string& who) {
  const auto conv = cf.convergents();
  for (size_t k = 0; k + 1 < conv.size(); ++k) {
    const BigInt& p = conv[k].first;
    const BigInt& q = conv[k].second;
    const BigInt& q1 = conv[k + 1].second;
    const BigInt A = p * Q - BigInt(P) * q;
    const BigInt lo = A * q1 - Q;
    const BigInt mid = BigInt(D) * q * q * q1 * q1;
    const BigInt hi = A * q1 + Q;
    const bool ok = (lo < 0 || lo * lo < mid) && mid < hi * hi;
    check(ok, who + ": convergent inequality fails at k=" + std::to_string(k));
  }
}

void c9_continued_fractions() {
  const auto phi = continued_fraction(SlopeValue::of_surd(1, 5, 2), 30);
  check(phi.a0 == 1 && phi.depth() == 30, "phi expansion depth");
  for (const auto& q : phi.quotients) check(q == 1, "phi quotient != 1");
  check_surd_convergents(1, 5, 2, phi, "phi");

  const auto r2 = continued_fraction(SlopeValue::of_surd(0, 2, 1), 30);
  check(r2.a0 == 1 && r2.depth() == 30, "sqrt2 expansion depth");
  for (const auto& q : r2.quotients) check(q == 2, "sqrt2 quotient != 2");
  check_surd_convergents(0, 2, 1, r2, "sqrt2");

  const auto pi = continued_fraction(SlopeValue::of_rational(355, 113), 30);
  check(pi.a0 == 3 && pi.depth() == 2 && pi.quotients[0] == 7 &&
            pi.quotients[1] == 16 && pi.exact_terminated,
        "355/113 != [3; 7, 16]");
  const auto conv = pi.convergents();
  for (size_t k = 0; k + 1 < conv.size(); ++k) {
    // |355/113 - p/q| <= 1/(q q')  <=>  |355 q - 113 p| q' <= 113, exactly.
    // Strict for interior convergents; the second-to-last convergent of a
    // rational attains equality (x - p/q = +-1/(q q') when p'/q' = x).
    const BigInt r = 355 * conv[k].second - 113 * conv[k].first;
    const BigInt lhs = (r < 0 ? -r : r) * conv[k + 1].second;
    if (k + 2 < conv.size())
      check(lhs < 113,
            "355/113 convergent inequality fails at k=" + std::to_string(k));
    else
      check(lhs == 113,
            "355/113 terminal convergent not tight at k=" + std::to_string(k));
  }
}

void c10_exhaustive_equivalence() {
  const auto s = load_surface("torus");
  const auto dir = parse_direction("phi").dir;
  const auto starts = default_starts(s, 1, 5);
  const double c_cap = 100.0;
  const std::vector<double> Ts{1.0, 2.0, 4.0};

  const auto prof = superdensity_scan(s, dir, Ts, starts, c_cap, 5);
  const auto grid = default_c_grid(c_cap);
  const double sys = systole(s);

  for (size_t ti = 0; ti < Ts.size(); ++ti) {
    const double T = Ts[ti];
    const double h = std::min(1.0 / (4 * T), sys / 5.0);
    const MeshGraph mesh = build_mesh(s, h, sys);

    int worst_k = -1;
    std::vector<Chord> worst_chords;
    for (const auto& st : starts) {
      const auto seg = trace_flow(s, st.p, dir, c_cap * T);
      check(seg.termination == Termination::completed, "trace truncated");

      // Snap the chords at h/2 spacing, exactly as the scan samples them.
      std::vector<int> node;
      std::vector<double> offset, at;
      double cum = 0;
      for (const Chord& c : seg.chords) {
        const double len = c.length();
        const Vec2 u = len > 0 ? (c.exit - c.entry) / len : Vec2{0, 0};
        for (double sp = 0; sp <= len; sp += mesh.h / 2) {
          const auto [n, d] = mesh.snap(c.face, c.entry + sp * u);
          node.push_back(n);
          offset.push_back(d);
          at.push_back(cum + sp);
          if (len == 0) break;
        }
        cum += len;
      }
      if (!seg.chords.empty()) {
        const auto [n, d] =
            mesh.snap(seg.chords.back().face, seg.chords.back().exit);
        node.push_back(n);
        offset.push_back(d);
        at.push_back(cum);
      }

      // Exhaustive ascent over the identical c grid: first feasible value.
      int least_k = -1;
      std::vector<double> distbuf;
      for (size_t k = 0; k < grid.size() && least_k < 0; ++k) {
        std::vector<std::pair<int, double>> seeds;
        for (size_t i = 0; i < node.size(); ++i) {
          if (at[i] > grid[k] * T + 1e-12) break;
          seeds.push_back({node[i], offset[i]});
        }
        if (seeds.empty()) seeds.push_back({node.front(), offset.front()});
        mesh_distances_into(mesh, seeds, distbuf);
        double r = 0;
        for (const double dd : distbuf) r = std::max(r, dd);
        if (r <= 1.0 / T) least_k = static_cast<int>(k);
      }
      check(least_k >= 0, "T=" + num(T) + ": exhaustive search found no c");
      if (least_k > worst_k) {
        worst_k = least_k;
        worst_chords = seg.chords;
      }
    }

    const auto& entry = prof.entries[ti];
    check(!entry.capped, "T=" + num(T) + ": scan capped unexpectedly");
    check(entry.c_hat == grid[worst_k],
          "T=" + num(T) + ": scan c_hat " + num(entry.c_hat) +
              " != exhaustive " + num(grid[worst_k]));

    // Independent geometric cross-check on the binding start: the chosen
    // prefix covers a 64x64 probe grid at the relaxed radius, and the
    // previous grid value fails at the tightened radius.
    const double loose = 1.0 / T + 5 * h;
    check(oracle::cover_length_on_grid(worst_chords, loose, 64) <=
              entry.c_hat * T + 1e-9,
          "T=" + num(T) + ": probe grid not covered at c_hat");
    if (worst_k > 0) {
      const double tight = std::max(1.0 / T - 5 * h, 1e-6);
      check(oracle::cover_length_on_grid(worst_chords, tight, 64) >
                grid[worst_k - 1] * T - 1e-9,
            "T=" + num(T) + ": previous grid value already covers");
    }
  }
}

void c11_determinism() {
  ScenarioConfig cfg;
  cfg.surface = "torus";
  cfg.direction = "phi";
  cfg.T_list = {4, 8};
  cfg.t_max = 2.0;
  cfg.dt = 0.25;
  cfg.h = 0.05;
  cfg.seed = 42;

  const auto read = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  };

  const fs::path a = fs::temp_directory_path() / "tsurf-accept-a";
  const fs::path b = fs::temp_directory_path() / "tsurf-accept-b";
  fs::remove_all(a);
  fs::remove_all(b);
  cfg.outdir = a.string();
  verify_theorem(cfg);
  cfg.outdir = b.string();
  verify_theorem(cfg);

  for (const char* f : {"track.csv", "profile.csv"}) {
    const std::string sa = read(a / f), sb = read(b / f);
    check(!sa.empty(), std::string(f) + " is empty");
    check(sa == sb, std::string(f) + " differs between equal-seed runs");
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

}  // namespace

int main() {
  criterion(1, "torus diameter and systole match closed forms at h=0.01",
            c1_geometry_kernel);
  criterion(2, "Delaunay edges stay within twice the diameter on all builtins",
            c2_delaunay_edge_bound);
  criterion(3, "closed orbits return to the start within 1e-8",
            c3_closed_orbit_return);
  criterion(4, "vertical torus flow diverges at rate 1 and never covers",
            c4_divergent_side);
  criterion(5, "golden torus flow stays bounded and covers at every horizon",
            c5_bounded_side);
  criterion(6, "covering budget 2*D_max^2*T meets the 1/T target",
            c6_forward_budget);
  criterion(7, "tracked diameters respect the max{4c, c+2} bound",
            c7_backward_bound);
  criterion(8, "square-tiled contrast: sqrt2 covers, giant-quotient stalls",
            c8_square_tiled_contrast);
  criterion(9, "continued-fraction quotients and convergent inequality",
            c9_continued_fractions);
  criterion(10, "bisection scan equals the exhaustive grid search",
            c10_exhaustive_equivalence);
  criterion(11, "equal seeds produce byte-identical reports", c11_determinism);

  std::printf("%d of 11 criteria passed\n", 11 - failures);
  return failures;
}
