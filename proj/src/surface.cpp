#include "tsurf/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "tsurf/errors.hpp"

namespace tsurf {

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i];
  }
  return os.str();
}

int TranslationSurface::n_face_edges() const {
  int n = 0;
  for (const auto& f : faces) n += f.size();
  return n;
}

bool TranslationSurface::has_singularity() const {
  for (const auto& c : cone_points)
    if (c.is_singular()) return true;
  return false;
}

std::vector<int> TranslationSurface::endpoint_classes() const {
  std::vector<int> out;
  const bool cones = has_singularity();
  for (const auto& c : cone_points)
    if (c.is_singular() == cones) out.push_back(c.vertex_class);
  return out;
}

namespace {

struct Topology {
  std::vector<int> edge_offset;
  std::vector<EdgeRef> partner;
  std::vector<std::vector<int>> corner_class;
  std::vector<VertexClass> classes;
};

// Builds the edge partner table. Returns false (and fills `why`) when the
// gluing combinatorics are broken; geometric checks happen elsewhere.
bool build_partner_table(const TranslationSurface& s, Topology& topo,
                         std::vector<std::string>* why) {
  const int nf = static_cast<int>(s.faces.size());
  topo.edge_offset.assign(nf + 1, 0);
  for (int f = 0; f < nf; ++f)
    topo.edge_offset[f + 1] = topo.edge_offset[f] + s.faces[f].size();
  const int ne = topo.edge_offset[nf];
  topo.partner.assign(ne, EdgeRef{});

  bool ok = true;
  auto note = [&](const std::string& msg) {
    ok = false;
    if (why) why->push_back(msg);
  };

  std::vector<int> seen(ne, 0);
  for (size_t gi = 0; gi < s.gluings.size(); ++gi) {
    const EdgeGluing& g = s.gluings[gi];
    auto in_range = [&](int f, int e) {
      return f >= 0 && f < nf && e >= 0 && e < s.faces[f].size();
    };
    if (!in_range(g.fa, g.ea) || !in_range(g.fb, g.eb)) {
      std::ostringstream os;
      os << "gluing " << gi << " references a missing face or edge";
      note(os.str());
      continue;
    }
    const int ida = topo.edge_offset[g.fa] + g.ea;
    const int idb = topo.edge_offset[g.fb] + g.eb;
    if (ida == idb) {
      std::ostringstream os;
      os << "edge (face " << g.fa << ", edge " << g.ea
         << ") glued to itself";
      note(os.str());
      continue;
    }
    if (seen[ida]++ || seen[idb]++) {
      std::ostringstream os;
      os << "edge glued more than once in gluing " << gi;
      note(os.str());
      continue;
    }
    topo.partner[ida] = {g.fb, g.eb};
    topo.partner[idb] = {g.fa, g.ea};
  }
  for (int f = 0; f < nf; ++f)
    for (int e = 0; e < s.faces[f].size(); ++e)
      if (!topo.partner[topo.edge_offset[f] + e].valid()) {
        std::ostringstream os;
        os << "unpaired edge (face " << f << ", edge " << e << ")";
        note(os.str());
      }
  return ok;
}

// Walks corner orbits to build vertex classes; requires a complete partner
// table.
void build_vertex_classes(const TranslationSurface& s, Topology& topo) {
  const int nf = static_cast<int>(s.faces.size());
  topo.corner_class.assign(nf, {});
  for (int f = 0; f < nf; ++f) topo.corner_class[f].assign(s.faces[f].size(), -1);
  topo.classes.clear();

  for (int f0 = 0; f0 < nf; ++f0) {
    for (int v0 = 0; v0 < s.faces[f0].size(); ++v0) {
      if (topo.corner_class[f0][v0] >= 0) continue;
      const int cls = static_cast<int>(topo.classes.size());
      topo.classes.emplace_back();
      VertexClass& vc = topo.classes.back();
      int f = f0, v = v0;
      do {
        topo.corner_class[f][v] = cls;
        vc.corners.emplace_back(f, v);
        vc.total_angle += interior_angle(s.faces[f].v, v);
        // Cross the incoming boundary edge (v-1 -> v) of this corner; the
        // glued edge starts at the identified vertex.
        const int n = s.faces[f].size();
        const int e_in = (v - 1 + n) % n;
        const EdgeRef p = topo.partner[topo.edge_offset[f] + e_in];
        f = p.face;
        v = p.edge;
      } while (!(f == f0 && v == v0));
      vc.order =
          static_cast<int>(std::lround(vc.total_angle / (2 * kPi))) - 1;
    }
  }
}

}  // namespace

ValidationReport validate(const TranslationSurface& s) {
  ValidationReport rep;
  auto note = [&](const std::string& m) { rep.violations.push_back(m); };

  if (s.faces.empty()) {
    note("surface has no faces");
    return rep;
  }
  for (size_t f = 0; f < s.faces.size(); ++f) {
    const auto& poly = s.faces[f].v;
    std::ostringstream tag;
    tag << "face " << f;
    if (poly.size() < 3) {
      note(tag.str() + " has fewer than 3 vertices");
      continue;
    }
    bool finite = true;
    for (const Vec2& p : poly)
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) finite = false;
    if (!finite) {
      note(tag.str() + " has non-finite coordinates");
      continue;
    }
    if (polygon_signed_area(poly) <= kGeomTol * kGeomTol)
      note(tag.str() + " is not positively oriented with positive area");
    if (!polygon_is_simple(poly)) note(tag.str() + " is not simple");
  }
  if (!rep.valid()) return rep;

  Topology topo;
  std::vector<std::string> why;
  const bool table_ok = build_partner_table(s, topo, &why);
  for (auto& w : why) note(w);

  // Geometric gluing checks (only for gluings with valid indices).
  const int nf = static_cast<int>(s.faces.size());
  for (size_t gi = 0; gi < s.gluings.size(); ++gi) {
    const EdgeGluing& g = s.gluings[gi];
    auto in_range = [&](int f, int e) {
      return f >= 0 && f < nf && e >= 0 && e < s.faces[f].size();
    };
    if (!in_range(g.fa, g.ea) || !in_range(g.fb, g.eb)) continue;
    const Vec2 va = s.faces[g.fa].edge_vector(g.ea);
    const Vec2 vb = s.faces[g.fb].edge_vector(g.eb);
    std::ostringstream tag;
    tag << "gluing " << gi << " (face " << g.fa << " edge " << g.ea
        << " ~ face " << g.fb << " edge " << g.eb << ")";
    if (std::abs(norm(va) - norm(vb)) > kGeomTol)
      note(tag.str() + ": edge length mismatch");
    else if (norm(va + vb) > kGeomTol)
      note(tag.str() + ": glued edges not antiparallel");
  }

  if (!table_ok || !rep.valid()) return rep;

  // Connectivity over the gluing graph.
  std::vector<int> comp(nf, -1);
  std::vector<int> stack = {0};
  comp[0] = 0;
  while (!stack.empty()) {
    const int f = stack.back();
    stack.pop_back();
    for (int e = 0; e < s.faces[f].size(); ++e) {
      const EdgeRef p = topo.partner[topo.edge_offset[f] + e];
      if (comp[p.face] < 0) {
        comp[p.face] = 0;
        stack.push_back(p.face);
      }
    }
  }
  for (int f = 0; f < nf; ++f)
    if (comp[f] < 0) {
      note("surface disconnected: face " + std::to_string(f) +
           " unreachable from face 0");
      return rep;
    }

  // Cone angles must be integer multiples of 2*pi.
  build_vertex_classes(s, topo);
  for (size_t c = 0; c < topo.classes.size(); ++c) {
    const double a = topo.classes[c].total_angle;
    const double k = a / (2 * kPi);
    if (std::abs(k - std::lround(k)) * 2 * kPi >
        kAngleTol * std::max<double>(4.0, topo.classes[c].corners.size())) {
      std::ostringstream os;
      os << "vertex class " << c << ": angle not multiple of 2pi (got " << a
         << ")";
      note(os.str());
    } else if (std::lround(k) < 1) {
      std::ostringstream os;
      os << "vertex class " << c << ": total angle below 2pi";
      note(os.str());
    }
  }
  return rep;
}

void analyze(TranslationSurface& s) {
  ValidationReport rep = validate(s);
  if (!rep.valid())
    throw InvalidSurface("invalid surface '" + s.name + "': " + rep.to_string());

  Topology topo;
  build_partner_table(s, topo, nullptr);
  build_vertex_classes(s, topo);
  s.edge_offset = std::move(topo.edge_offset);
  s.partner = std::move(topo.partner);
  s.corner_class = std::move(topo.corner_class);
  s.classes = std::move(topo.classes);

  s.cone_points.clear();
  s.stratum.kappa.clear();
  for (size_t c = 0; c < s.classes.size(); ++c) {
    ConePoint cp;
    cp.vertex_class = static_cast<int>(c);
    cp.total_angle = s.classes[c].total_angle;
    cp.order = s.classes[c].order;
    s.cone_points.push_back(cp);
    if (cp.order > 0) s.stratum.kappa.push_back(cp.order);
  }
  std::sort(s.stratum.kappa.rbegin(), s.stratum.kappa.rend());

  // Euler characteristic of the glued complex: V - E + F = 2 - 2g.
  const int V = static_cast<int>(s.classes.size());
  const int E = static_cast<int>(s.gluings.size());
  const int F = static_cast<int>(s.faces.size());
  const int chi = V - E + F;
  if (chi % 2 != 0)
    throw InvalidSurface("surface '" + s.name +
                         "': odd Euler characteristic");
  s.genus = (2 - chi) / 2;

  const int kappa_sum =
      std::accumulate(s.stratum.kappa.begin(), s.stratum.kappa.end(), 0);
  if (kappa_sum != 2 * s.genus - 2)
    throw InvalidSurface("surface '" + s.name +
                         "': cone orders violate the Gauss-Bonnet identity");

  s.total_area = 0.0;
  for (const auto& f : s.faces) s.total_area += f.area();
  s.analyzed = true;
}

TranslationSurface analyzed_copy(TranslationSurface s) {
  analyze(s);
  return s;
}

namespace {

const TranslationSurface& require_analyzed(const TranslationSurface& s) {
  if (!s.analyzed)
    throw InvalidSurface("surface '" + s.name +
                         "' used before analyze(); call analyze first");
  return s;
}

}  // namespace

std::pair<StratumSignature, int> stratum_and_genus(
    const TranslationSurface& s) {
  if (s.analyzed) return {s.stratum, s.genus};
  TranslationSurface c = s;
  analyze(c);
  return {c.stratum, c.genus};
}

double area(const TranslationSurface& s) {
  if (s.analyzed) return s.total_area;
  ValidationReport rep = validate(s);
  if (!rep.valid()) throw InvalidSurface("area: " + rep.to_string());
  double a = 0.0;
  for (const auto& f : s.faces) a += f.area();
  return a;
}

double surface_scale(const TranslationSurface& s) {
  return std::sqrt(area(s));
}

double min_edge_length(const TranslationSurface& s) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& f : s.faces)
    for (int e = 0; e < f.size(); ++e) m = std::min(m, norm(f.edge_vector(e)));
  return m;
}

Vec2 gluing_translation(const TranslationSurface& s, int face, int edge) {
  const EdgeRef p = require_analyzed(s).partner_of(face, edge);
  // Start of edge a maps to the end of edge b: p -> p + (B_end - A_start).
  const Vec2 a_start = s.faces[face].vertex(edge);
  const Vec2 b_end =
      s.faces[p.face].vertex(p.edge) + s.faces[p.face].edge_vector(p.edge);
  return b_end - a_start;
}

Vec2 cross_gluing(const TranslationSurface& s, int face, int edge, double sp,
                  EdgeRef* out) {
  const EdgeRef p = require_analyzed(s).partner_of(face, edge);
  if (out) *out = p;
  // Parameter s along edge a lands at parameter 1-s along edge b.
  const Vec2 b0 = s.faces[p.face].vertex(p.edge);
  return b0 + (1.0 - sp) * s.faces[p.face].edge_vector(p.edge);
}

std::pair<int, int> next_corner(const TranslationSurface& s, int face,
                                int vertex) {
  require_analyzed(s);
  const int n = s.faces[face].size();
  const int e_in = (vertex - 1 + n) % n;
  const EdgeRef p = s.partner_of(face, e_in);
  return {p.face, p.edge};
}

Vec2 class_position(const TranslationSurface& s, int cls, int* face) {
  require_analyzed(s);
  const auto& [f, v] = s.classes[cls].corners.front();
  if (face) *face = f;
  return s.faces[f].vertex(v);
}

bool same_invariants(const TranslationSurface& a, const TranslationSurface& b,
                     double tol) {
  auto edge_multiset = [](const TranslationSurface& s) {
    std::vector<std::pair<double, double>> v;
    for (const auto& f : s.faces)
      for (int e = 0; e < f.size(); ++e) {
        Vec2 w = f.edge_vector(e);
        if (w.y < 0 || (w.y == 0 && w.x < 0)) w = -w;  // canonical sign
        v.emplace_back(w.x, w.y);
      }
    std::sort(v.begin(), v.end());
    return v;
  };
  auto [sa, ga] = stratum_and_genus(a);
  auto [sb, gb] = stratum_and_genus(b);
  if (!(sa == sb) || ga != gb) return false;
  if (std::abs(area(a) - area(b)) > tol * std::max(area(a), 1.0)) return false;
  auto ea = edge_multiset(a), eb = edge_multiset(b);
  if (ea.size() != eb.size()) return false;
  for (size_t i = 0; i < ea.size(); ++i)
    if (std::abs(ea[i].first - eb[i].first) > tol ||
        std::abs(ea[i].second - eb[i].second) > tol)
      return false;
  return true;
}

}  // namespace tsurf
