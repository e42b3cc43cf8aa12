#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "tsurf/builders.hpp"
#include "tsurf/errors.hpp"
#include "tsurf/mesh.hpp"
#include "tsurf/metrics.hpp"
#include "tsurf/surface_io.hpp"

using namespace tsurf;

TEST_CASE("systole is exact on flat tori") {
  CHECK(systole(load_surface("torus")) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(systole(load_surface("torus:2x0.5")) ==
        doctest::Approx(0.5).epsilon(1e-9));
  // Shortest vector of the lattice spanned by (1,0) and (0.7,1) is (1,0).
  CHECK(systole(build_torus({1, 0}, {0.7, 1})) ==
        doctest::Approx(1.0).epsilon(1e-9));
  // Scale invariance.
  CHECK(systole(build_torus({0.25, 0}, {0, 0.25})) ==
        doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("systole on higher-genus surfaces") {
  // Regular octagon with unit sides: the sides themselves are the shortest
  // saddle connections.
  CHECK(systole(load_surface("octagon")) ==
        doctest::Approx(1.0).epsilon(1e-7));
  // Three-square L: shortest connection is a unit square side.
  CHECK(systole(load_surface("st-L3")) == doctest::Approx(1.0).epsilon(1e-9));
  // Unfolded (pi/8, pi/2) triangle with unit horizontal leg: the vertical
  // leg tan(pi/8) doubles across a reflection copy into a saddle connection
  // of length 2*tan(pi/8) = 2(sqrt2 - 1).
  CHECK(systole(load_surface("billiard-tri:8")) ==
        doctest::Approx(2.0 * (std::sqrt(2.0) - 1.0)).epsilon(1e-7));
}

TEST_CASE("build_mesh rejects spacings too coarse for the systole") {
  auto s = load_surface("torus");  // systole 1 => need h < 0.25
  CHECK_THROWS_AS(build_mesh(s, 0.26), MeshTooCoarse);
  CHECK_THROWS_AS(build_mesh(s, 0.0), MeshTooCoarse);
  CHECK_THROWS_AS(build_mesh(s, -0.1), MeshTooCoarse);
  CHECK_NOTHROW(build_mesh(s, 0.24));
}

TEST_CASE("mesh structure on the unit torus") {
  auto s = load_surface("torus");
  auto m = build_mesh(s, 0.2);
  CHECK(m.h == 0.2);
  REQUIRE(m.nodes.size() > 25);  // 5x5 grid + edge samples + vertex node
  REQUIRE(m.off.size() == m.nodes.size() + 1);
  CHECK(m.adj.size() == m.w.size());

  int n_vertex = 0, n_grid = 0;
  for (const auto& nd : m.nodes) {
    CHECK(nd.face == 0);
    if (nd.kind == MeshGraph::kVertex) {
      ++n_vertex;
      CHECK(nd.vclass == 0);
    }
    if (nd.kind == MeshGraph::kGrid) {
      ++n_grid;
      CHECK(nd.gi >= 0);
      CHECK(nd.gj >= 0);
    }
  }
  CHECK(n_vertex == 1);  // single vertex class
  CHECK(n_grid == 25);   // cell-centered 5x5

  // Adjacency: connected, symmetric, weights in (0, 3.65h].
  for (size_t v = 0; v < m.nodes.size(); ++v) {
    CHECK(m.degree((int)v) >= 1);
    for (int k = m.off[v]; k < m.off[v + 1]; ++k) {
      int u = m.adj[k];
      REQUIRE(u >= 0);
      REQUIRE(u < (int)m.nodes.size());
      CHECK(m.w[k] > 0);
      CHECK(m.w[k] <= 3.65 * m.h + 1e-9);
      bool reverse = false;
      for (int j = m.off[u]; j < m.off[u + 1]; ++j)
        if (m.adj[j] == (int)v && std::abs(m.w[j] - m.w[k]) < 1e-6)
          reverse = true;
      CHECK(reverse);
    }
  }
}

TEST_CASE("sample_nodes subsamples the grid but keeps vertex nodes") {
  auto m = build_mesh(load_surface("torus"), 0.1);
  auto all = m.sample_nodes(1);
  auto sub = m.sample_nodes(2);
  CHECK(sub.size() < all.size());
  CHECK(!sub.empty());
  std::set<int> allset(all.begin(), all.end());
  int vertex_in_sub = 0;
  for (int v : sub) {
    CHECK(allset.count(v) == 1);
    auto kind = m.nodes[v].kind;
    CHECK((kind == MeshGraph::kGrid || kind == MeshGraph::kVertex));
    if (kind == MeshGraph::kVertex) ++vertex_in_sub;
  }
  CHECK(vertex_in_sub == 1);
}

TEST_CASE("snap finds a node within one spacing") {
  auto m = build_mesh(load_surface("torus"), 0.2);
  auto [v, d] = m.snap(0, {0.47, 0.61});
  REQUIRE(v >= 0);
  REQUIRE(v < (int)m.nodes.size());
  CHECK(d <= m.h + 1e-12);
  auto [v2, d2] = m.snap(0, {0.5, 0.5});  // exact cell-center position
  CHECK(d2 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(m.nodes[v2].kind == MeshGraph::kGrid);
}

TEST_CASE("mesh distances match the exact torus metric") {
  auto s = load_surface("torus");
  double h = 0.02;
  auto m = build_mesh(s, h);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(0.05, 0.95);
  for (int trial = 0; trial < 25; ++trial) {
    Vec2 a{U(rng), U(rng)}, b{U(rng), U(rng)};
    double exact = oracle::torus_point_distance(a, b, {1, 0}, {0, 1});
    double got = mesh_point_distance(m, {0, a}, {0, b});
    // Graph paths never undershoot beyond the two snap legs, and overshoot
    // by at most the template stretch plus sampling slack.
    CHECK(got >= exact - 2.5 * h);
    CHECK(got <= exact * 1.015 + 2.5 * h);
  }
}

TEST_CASE("diameter matches the flat-torus closed form") {
  double h = 0.05;
  auto d1 = diameter(load_surface("torus"), h);
  CHECK(d1.error <= 5 * h);
  CHECK(std::abs(d1.value - std::sqrt(2.0) / 2) <= d1.error);

  auto d2 = diameter(load_surface("torus:2x0.5"), h);
  CHECK(d2.error <= 5 * h);
  CHECK(std::abs(d2.value - std::sqrt(17.0) / 4) <= d2.error);
}

TEST_CASE("diameter of a torus is half the longest Voronoi distance") {
  // Hexagonal-ish lattice (1,0),(0.5,1): covering radius has a closed form
  // via the circumradius oracle; the mesh estimate must agree within error.
  double h = 0.05;
  Vec2 u{1, 0}, v{0.5, 1};
  double exact = oracle::lattice_covering_radius(u, v);
  auto est = diameter(build_torus(u, v), h);
  CHECK(std::abs(est.value - exact) <= est.error);
}

TEST_CASE("compute_metrics bundles area, systole, and diameter") {
  auto s = load_surface("torus");
  auto mm = compute_metrics(s, 0.05);
  CHECK(mm.area == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mm.systole == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(mm.systole_err <= 1e-6);
  CHECK(mm.mesh_spacing == 0.05);
  CHECK(std::abs(mm.diameter - std::sqrt(2.0) / 2) <= mm.diameter_err);
  CHECK(mm.diameter_err <= 5 * 0.05);
}
