#include "tsurf/surface_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tsurf/builders.hpp"
#include "tsurf/errors.hpp"

namespace tsurf {

using nlohmann::json;

std::string surface_to_json(const TranslationSurface& s) {
  TranslationSurface a = s;
  if (!a.analyzed) analyze(a);
  json j;
  j["name"] = a.name;
  json faces = json::array();
  for (const auto& f : a.faces) {
    json poly = json::array();
    for (const Vec2& p : f.v) poly.push_back(json::array({p.x, p.y}));
    faces.push_back(poly);
  }
  j["faces"] = faces;
  json gluings = json::array();
  for (const auto& g : a.gluings)
    gluings.push_back(
        {{"fa", g.fa}, {"ea", g.ea}, {"fb", g.fb}, {"eb", g.eb}});
  j["gluings"] = gluings;
  json marked = json::array();
  for (const auto& cp : a.cone_points) {
    if (cp.order != 0) continue;
    int face = 0;
    const Vec2 p = class_position(a, cp.vertex_class, &face);
    marked.push_back(json::array({face, p.x, p.y}));
  }
  j["marked"] = marked;
  return j.dump(2) + "\n";
}

TranslationSurface surface_from_json(const std::string& text,
                                     const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  TranslationSurface s;
  try {
    if (!j.is_object()) throw ParseError(origin + ": top level is not an object");
    s.name = j.value("name", std::string("unnamed"));
    if (!j.contains("faces") || !j["faces"].is_array())
      throw ParseError(origin + ": missing or non-array field 'faces'");
    for (const auto& poly : j["faces"]) {
      PolygonFace f;
      if (!poly.is_array())
        throw ParseError(origin + ": face entry is not an array");
      for (const auto& pt : poly) {
        if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() ||
            !pt[1].is_number())
          throw ParseError(origin + ": face vertex is not a number pair");
        f.v.push_back({pt[0].get<double>(), pt[1].get<double>()});
      }
      s.faces.push_back(std::move(f));
    }
    if (!j.contains("gluings") || !j["gluings"].is_array())
      throw ParseError(origin + ": missing or non-array field 'gluings'");
    for (const auto& g : j["gluings"]) {
      if (!g.is_object() || !g.contains("fa") || !g.contains("ea") ||
          !g.contains("fb") || !g.contains("eb"))
        throw ParseError(origin + ": gluing entry needs fa, ea, fb, eb");
      s.gluings.push_back({g["fa"].get<int>(), g["ea"].get<int>(),
                           g["fb"].get<int>(), g["eb"].get<int>()});
    }
  } catch (const json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }

  ValidationReport rep = validate(s);
  // Marked points are derived from the gluings; entries in the file must at
  // least sit on declared vertices.
  if (rep.valid() && j.contains("marked")) {
    for (const auto& m : j["marked"]) {
      if (!m.is_array() || m.size() != 3) {
        rep.violations.push_back("marked entry is not [face, x, y]");
        continue;
      }
      const int face = m[0].get<int>();
      const Vec2 p{m[1].get<double>(), m[2].get<double>()};
      bool on_vertex = false;
      if (face >= 0 && face < static_cast<int>(s.faces.size()))
        for (const Vec2& v : s.faces[face].v)
          if (dist(v, p) <= 1e-7) on_vertex = true;
      if (!on_vertex)
        rep.violations.push_back("marked point not at a vertex of its face");
    }
  }
  if (!rep.valid()) {
    std::ostringstream os;
    os << origin << ": surface invalid";
    const size_t shown = std::min<size_t>(rep.violations.size(), 10);
    for (size_t i = 0; i < shown; ++i) os << "\n  - " << rep.violations[i];
    if (rep.violations.size() > shown)
      os << "\n  (+" << rep.violations.size() - shown << " more)";
    throw ValidationFailed(os.str());
  }
  analyze(s);
  return s;
}

void save_surface_json(const TranslationSurface& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << surface_to_json(s);
  if (!out.good()) throw IoError("write failed: " + path);
}

TranslationSurface load_surface_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open surface file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return surface_from_json(buf.str(), path);
}

namespace {

std::vector<int> parse_perm(const std::string& text,
                            const std::string& origin) {
  std::vector<int> images;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
      images.push_back(std::stoi(tok));
  } else {
    for (char c : text) {
      if (c < '1' || c > '9')
        throw ParseError(origin + ": permutation digit out of range: " +
                         std::string(1, c));
      images.push_back(c - '0');
    }
  }
  for (int& x : images) --x;  // 1-based in the name, 0-based internally
  return images;
}

}  // namespace

bool is_builtin_name(const std::string& name) {
  if (name == "torus" || name == "st-L3" || name == "octagon") return true;
  return name.rfind("torus:", 0) == 0 || name.rfind("st:", 0) == 0 ||
         name.rfind("billiard-rect:", 0) == 0 ||
         name.rfind("billiard-tri:", 0) == 0;
}

TranslationSurface load_surface(const std::string& name_or_path) {
  const std::string& n = name_or_path;
  try {
    if (n == "torus") return build_torus({1, 0}, {0, 1});
    if (n == "st-L3")
      return build_square_tiled({1, 0, 2}, {2, 1, 0});  // h=(1 2), v=(1 3)
    if (n == "octagon") return build_octagon();
    if (n.rfind("torus:", 0) == 0) {
      const std::string spec = n.substr(6);
      const auto x = spec.find('x');
      if (x == std::string::npos)
        throw ParseError("builtin '" + n + "': expected torus:WxH");
      const double w = std::stod(spec.substr(0, x));
      const double h = std::stod(spec.substr(x + 1));
      return build_torus({w, 0}, {0, h});
    }
    if (n.rfind("st:", 0) == 0) {
      const auto sep = n.find(':', 3);
      if (sep == std::string::npos)
        throw ParseError("builtin '" + n + "': expected st:hperm:vperm");
      return build_square_tiled(parse_perm(n.substr(3, sep - 3), n),
                                parse_perm(n.substr(sep + 1), n));
    }
    if (n.rfind("billiard-rect:", 0) == 0) {
      const std::string spec = n.substr(14);
      const auto sep = spec.find(':');
      if (sep == std::string::npos)
        throw ParseError("builtin '" + n + "': expected billiard-rect:a:b");
      return unfold_billiard(BilliardTable::rectangle(
          std::stod(spec.substr(0, sep)), std::stod(spec.substr(sep + 1))));
    }
    if (n.rfind("billiard-tri:", 0) == 0)
      return unfold_billiard(
          BilliardTable::right_triangle(std::stoi(n.substr(13))));
  } catch (const std::invalid_argument&) {
    throw ParseError("builtin '" + n + "': malformed numeric parameter");
  } catch (const std::out_of_range&) {
    throw ParseError("builtin '" + n + "': numeric parameter out of range");
  }
  return load_surface_json(n);
}

std::vector<std::string> builtin_surface_names() {
  return {"torus",   "torus:2x0.5",      "st-L3",
          "octagon", "billiard-rect:1:0.5", "billiard-tri:8"};
}

}  // namespace tsurf
