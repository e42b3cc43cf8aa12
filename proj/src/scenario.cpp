#include "tsurf/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <system_error>

#include <json.hpp>

#include "tsurf/errors.hpp"
#include "tsurf/surface_io.hpp"

namespace tsurf {

using nlohmann::json;

const char* to_string(Evidence e) {
  switch (e) {
    case Evidence::positive:
      return "positive";
    case Evidence::negative:
      return "negative";
    default:
      return "inconclusive";
  }
}

std::string agreement_of(Evidence density_side, Evidence geodesic_side) {
  if (density_side == Evidence::inconclusive ||
      geodesic_side == Evidence::inconclusive)
    return "inconclusive";
  return density_side == geodesic_side ? "consistent" : "inconsistent";
}

TheoremReport verify_theorem(const ScenarioConfig& config) {
  if (config.t_max <= 0 || config.dt <= 0 || config.c_cap <= 0)
    throw NonPositiveInput(
        "verify_theorem: t_max, dt and c_cap must be positive");
  if (config.T_list.empty())
    throw NonPositiveInput("verify_theorem: T_list must be non-empty");
  for (double T : config.T_list)
    if (T <= 0) throw NonPositiveInput("verify_theorem: horizons must be > 0");
  if (config.n_random_starts < 0)
    throw NonPositiveInput("verify_theorem: n_random_starts must be >= 0");

  TheoremReport r;
  r.config = config;
  r.surface = load_surface(config.surface);
  r.direction = parse_direction(config.direction);

  const auto starts =
      default_starts(r.surface, config.n_random_starts, config.seed);
  r.profile = superdensity_scan(r.surface, r.direction.dir, config.T_list,
                                starts, config.c_cap, config.seed);
  if (r.profile.superdense_evidence())
    r.superdense = Evidence::positive;
  else if (r.profile.any_truncated())
    r.superdense = Evidence::inconclusive;
  else
    r.superdense = Evidence::negative;

  r.track =
      geodesic_track(r.surface, r.direction.dir, config.t_max, config.dt,
                     config.h);
  r.bounded = boundedness_diagnostic(r.track);
  const Evidence geo =
      r.bounded.verdict == Boundedness::bounded_evidence
          ? Evidence::positive
          : r.bounded.verdict == Boundedness::divergence_evidence
                ? Evidence::negative
                : Evidence::inconclusive;

  if (r.superdense == Evidence::positive && geo == Evidence::positive) {
    const double T_big =
        *std::max_element(config.T_list.begin(), config.T_list.end());
    r.forward = lemma_forward_verify(r.surface, r.direction.dir, T_big,
                                     r.bounded.D_max, config.h);
    r.forward_ran = true;
  }
  if (r.superdense == Evidence::positive) {
    // Same computation as a fresh backward check, reusing the track already
    // sampled above (identical parameters give an identical track).
    r.backward = check_track_against_bound(r.track, r.profile.max_finite_c());
    r.backward_ran = true;
  }

  r.agreement = agreement_of(r.superdense, geo);

  if (!config.outdir.empty()) emit_reports(r, config.outdir);
  return r;
}

std::string theorem_report_json(const TheoremReport& r) {
  json j;
  j["direction"] = r.direction.text;
  j["superdense_evidence"] = to_string(r.superdense);
  json by_t = json::object();
  for (const auto& e : r.profile.entries) {
    char key[40];
    std::snprintf(key, sizeof key, "%.12g", e.T);
    if (e.capped)
      by_t[key] = nullptr;
    else
      by_t[key] = e.c_hat;
  }
  j["c_hat_by_T"] = by_t;
  j["bounded_verdict"] = to_string(r.bounded.verdict);
  j["D_max"] = r.bounded.D_max;
  j["lemma_forward_pass"] = r.forward_ran ? json(r.forward.pass) : json();
  j["backward_bound"] = r.backward_ran ? json(r.backward.bound) : json();
  j["agreement"] = r.agreement;

  json caveats = json::array();
  if (r.profile.any_truncated())
    caveats.push_back(
        "flow hit a singularity before the scan horizon; density evidence is "
        "incomplete");
  if (r.profile.any_capped() && !r.profile.any_truncated())
    caveats.push_back(
        "c_hat capped at the scan ceiling for some horizons; larger T or "
        "c_cap may separate slow density from non-density");
  if (r.bounded.verdict == Boundedness::inconclusive)
    caveats.push_back(
        "diameter track neither settled nor grew at the e^t rate; a longer "
        "t_max may be needed");
  j["caveats"] = caveats;
  return j.dump(2) + "\n";
}

namespace {

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw IoError("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw IoError("cannot write " + path.string() + ": " + ec.message());
}

std::string run_meta_json(const ScenarioConfig& c) {
  json p;
  p["surface"] = c.surface;
  p["direction"] = c.direction;
  p["T_list"] = c.T_list;
  p["t_max"] = c.t_max;
  p["dt"] = c.dt;
  p["c_cap"] = c.c_cap;
  p["n_random_starts"] = c.n_random_starts;
  p["h"] = c.h;
  json j;
  j["seed"] = c.seed;
  j["parameters"] = p;
  j["version"] = kVersion;
  return j.dump(2) + "\n";
}

}  // namespace

void emit_reports(const TheoremReport& r, const std::string& outdir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(outdir, ec);
  if (!fs::is_directory(outdir))
    throw IoError("cannot create output directory " + outdir);
  const fs::path dir(outdir);
  write_file_atomic(dir / "surface.json", surface_to_json(r.surface));
  write_file_atomic(dir / "track.csv", track_csv(r.track));
  write_file_atomic(dir / "profile.csv", profile_csv(r.profile));
  write_file_atomic(dir / "theorem.json", theorem_report_json(r));
  write_file_atomic(dir / "run-meta.json", run_meta_json(r.config));
}

}  // namespace tsurf
