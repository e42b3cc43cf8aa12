#include "tsurf/builders.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "tsurf/errors.hpp"

namespace tsurf {

TranslationSurface build_torus(Vec2 e1, Vec2 e2) {
  if (cross(e1, e2) <= kGeomTol)
    throw DegenerateBasis("build_torus: basis determinant not positive");
  TranslationSurface s;
  std::ostringstream name;
  name << "torus[(" << e1.x << "," << e1.y << "),(" << e2.x << "," << e2.y
       << ")]";
  s.name = name.str();
  PolygonFace f;
  f.v = {Vec2{0, 0}, e1, e1 + e2, e2};
  s.faces.push_back(f);
  s.gluings.push_back({0, 0, 0, 2});  // bottom ~ top
  s.gluings.push_back({0, 1, 0, 3});  // right ~ left
  analyze(s);
  return s;
}

TranslationSurface build_square_tiled(const std::vector<int>& h_perm,
                                      const std::vector<int>& v_perm) {
  const int n = static_cast<int>(h_perm.size());
  if (n == 0 || v_perm.size() != h_perm.size())
    throw Error("build_square_tiled: permutation sizes differ or are empty");
  auto check_perm = [n](const std::vector<int>& p, const char* which) {
    std::vector<int> seen(n, 0);
    for (int x : p) {
      if (x < 0 || x >= n || seen[x]++)
        throw Error(std::string("build_square_tiled: ") + which +
                    " is not a permutation");
    }
  };
  check_perm(h_perm, "horizontal permutation");
  check_perm(v_perm, "vertical permutation");

  // Transitivity of the generated group = connectivity of the surface.
  std::vector<int> reach(n, 0);
  std::vector<int> stack = {0};
  reach[0] = 1;
  std::vector<int> h_inv(n), v_inv(n);
  for (int i = 0; i < n; ++i) h_inv[h_perm[i]] = i;
  for (int i = 0; i < n; ++i) v_inv[v_perm[i]] = i;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int j : {h_perm[i], v_perm[i], h_inv[i], v_inv[i]})
      if (!reach[j]) {
        reach[j] = 1;
        stack.push_back(j);
      }
  }
  if (std::count(reach.begin(), reach.end(), 1) != n)
    throw DisconnectedSurface(
        "build_square_tiled: permutations do not act transitively");

  TranslationSurface s;
  s.name = "square-tiled[" + std::to_string(n) + "]";
  for (int i = 0; i < n; ++i) {
    PolygonFace f;
    f.v = {Vec2{0, 0}, Vec2{1, 0}, Vec2{1, 1}, Vec2{0, 1}};
    s.faces.push_back(f);
  }
  for (int i = 0; i < n; ++i) {
    s.gluings.push_back({i, 1, h_perm[i], 3});  // right of i ~ left of h(i)
    s.gluings.push_back({i, 2, v_perm[i], 0});  // top of i ~ bottom of v(i)
  }
  analyze(s);
  return s;
}

TranslationSurface build_octagon() {
  TranslationSurface s;
  s.name = "octagon";
  PolygonFace f;
  const double R = 0.5 / std::sin(kPi / 8);  // circumradius for unit sides
  for (int k = 0; k < 8; ++k) {
    const double a = (2 * k + 1) * kPi / 8;
    f.v.push_back({R * std::cos(a), R * std::sin(a)});
  }
  s.faces.push_back(f);
  for (int k = 0; k < 4; ++k) s.gluings.push_back({0, k, 0, k + 4});
  analyze(s);
  return s;
}

BilliardTable BilliardTable::rectangle(double a, double b) {
  BilliardTable t;
  t.kind = Kind::rectangle;
  t.a = a;
  t.b = b;
  return t;
}

BilliardTable BilliardTable::right_triangle(int q) {
  BilliardTable t;
  t.kind = Kind::right_triangle;
  t.q = q;
  return t;
}

namespace {

// Linear reflection across the line through the origin with direction d.
Mat2 reflection_across(Vec2 d) {
  const double n2 = norm2(d);
  return {(d.x * d.x - d.y * d.y) / n2, 2 * d.x * d.y / n2,
          2 * d.x * d.y / n2, (d.y * d.y - d.x * d.x) / n2};
}

struct MatKey {
  long long a, b, c, d;
  bool operator<(const MatKey& o) const {
    return std::tie(a, b, c, d) < std::tie(o.a, o.b, o.c, o.d);
  }
};

MatKey key_of(const Mat2& m) {
  auto q = [](double x) { return std::llround(x * 1e9); };
  return {q(m.a), q(m.b), q(m.c), q(m.d)};
}

}  // namespace

TranslationSurface unfold_billiard(const BilliardTable& table) {
  std::vector<Vec2> poly;
  std::string name;
  switch (table.kind) {
    case BilliardTable::Kind::rectangle: {
      if (table.a <= kGeomTol || table.b <= kGeomTol)
        throw UnsupportedTable("unfold_billiard: rectangle sides must be positive");
      poly = {Vec2{0, 0}, Vec2{table.a, 0}, Vec2{table.a, table.b},
              Vec2{0, table.b}};
      std::ostringstream os;
      os << "billiard-rect[" << table.a << "x" << table.b << "]";
      name = os.str();
      break;
    }
    case BilliardTable::Kind::right_triangle: {
      if (table.q < 3 || table.q > 48)
        throw UnsupportedTable(
            "unfold_billiard: right triangle angle must be pi/q with 3 <= q <= 48");
      // Right angle at the origin, acute angle pi/q at (1, 0).
      poly = {Vec2{0, 0}, Vec2{1, 0}, Vec2{0, std::tan(kPi / table.q)}};
      name = "billiard-tri[pi/" + std::to_string(table.q) + "]";
      break;
    }
  }
  const int ne = static_cast<int>(poly.size());

  // Reflections across the edge directions; the generated group is finite
  // for rational tables (dihedral), and each element contributes one copy.
  std::vector<Mat2> gens(ne);
  for (int e = 0; e < ne; ++e)
    gens[e] = reflection_across(poly[(e + 1) % ne] - poly[e]);

  std::vector<Mat2> group = {Mat2::identity()};
  std::map<MatKey, int> index = {{key_of(group[0]), 0}};
  constexpr int kMaxCopies = 256;
  for (size_t i = 0; i < group.size(); ++i) {
    for (int e = 0; e < ne; ++e) {
      const Mat2 next = group[i] * gens[e];
      const MatKey k = key_of(next);
      if (index.emplace(k, static_cast<int>(group.size())).second) {
        group.push_back(next);
        if (group.size() > kMaxCopies)
          throw UnsupportedTable(
              "unfold_billiard: reflection group too large (irrational table?)");
      }
    }
  }

  TranslationSurface s;
  s.name = name;
  const int nc = static_cast<int>(group.size());
  // Face for element g: g(poly), with the vertex order reversed when g flips
  // orientation so that every face stays counterclockwise. Under reversal
  // new_j = old_{n-1-j}, table edge e appears as face edge (n-2-e) mod n.
  auto face_edge = [&](int g, int e) {
    return group[g].det() > 0 ? e : (ne - 2 - e + ne) % ne;
  };
  for (int gi = 0; gi < nc; ++gi) {
    PolygonFace f;
    f.v.resize(ne);
    for (int j = 0; j < ne; ++j) {
      const Vec2 w = group[gi].apply(poly[j]);
      f.v[group[gi].det() > 0 ? j : (ne - 1 - j)] = w;
    }
    s.faces.push_back(f);
  }
  for (int gi = 0; gi < nc; ++gi) {
    for (int e = 0; e < ne; ++e) {
      const Mat2 nb = group[gi] * gens[e];
      const int gj = index.at(key_of(nb));
      // Each unordered pair once: crossing edge e of copy gi reaches copy gj,
      // and crossing edge e of gj comes back.
      if (gj < gi) continue;
      if (gj == gi)
        throw UnsupportedTable("unfold_billiard: degenerate reflection");
      s.gluings.push_back({gi, face_edge(gi, e), gj, face_edge(gj, e)});
    }
  }
  analyze(s);
  return s;
}

}  // namespace tsurf
