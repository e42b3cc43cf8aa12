#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "tsurf/builders.hpp"
#include "tsurf/errors.hpp"
#include "tsurf/surface.hpp"
#include "tsurf/surface_io.hpp"

using namespace tsurf;

TEST_CASE("surface JSON round-trips exactly") {
  for (const auto& name : {"torus", "torus:2x0.5", "st-L3", "octagon"}) {
    const TranslationSurface s = load_surface(name);
    const TranslationSurface t = surface_from_json(surface_to_json(s));
    REQUIRE(t.faces.size() == s.faces.size());
    for (size_t f = 0; f < s.faces.size(); ++f) {
      REQUIRE(t.faces[f].size() == s.faces[f].size());
      for (int v = 0; v < s.faces[f].size(); ++v) {
        CHECK(t.faces[f].v[v].x == s.faces[f].v[v].x);
        CHECK(t.faces[f].v[v].y == s.faces[f].v[v].y);
      }
    }
    CHECK(t.gluings.size() == s.gluings.size());
    CHECK(same_invariants(s, t));
  }
}

TEST_CASE("malformed JSON raises a parse error naming the origin") {
  CHECK_THROWS_AS(surface_from_json("{ not json", "bad.json"), ParseError);
  try {
    surface_from_json("[1,2,3]", "arr.json");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("arr.json") != std::string::npos);
  }
}

TEST_CASE("a missing gluing fails validation with the unpaired edge") {
  const std::string text = R"({
    "name": "broken",
    "faces": [[[0,0],[1,0],[1,1],[0,1]]],
    "gluings": [{"fa":0,"ea":0,"fb":0,"eb":2},
                {"fa":0,"ea":1,"fb":0,"eb":1}]
  })";
  // edge 1 glued to itself leaves edge 3 unpaired and is not antiparallel
  try {
    surface_from_json(text, "broken.json");
    FAIL("expected ValidationFailed");
  } catch (const ValidationFailed& e) {
    const std::string msg = e.what();
    CHECK(msg.find("unpaired edge (face 0, edge 3)") != std::string::npos);
  }
}

TEST_CASE("file save and load") {
  const std::string path = "tsurf_io_test_surface.json";
  const TranslationSurface s = load_surface("st-L3");
  save_surface_json(s, path);
  const TranslationSurface t = load_surface(path);  // path branch of loader
  CHECK(same_invariants(s, t));
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_surface("no/such/file.json"), IoError);
}

TEST_CASE("builtin registry") {
  CHECK(is_builtin_name("torus"));
  CHECK(is_builtin_name("torus:3x2"));
  CHECK(is_builtin_name("st:213:231"));
  CHECK_FALSE(is_builtin_name("surface.json"));

  const TranslationSurface t = load_surface("torus:3x2");
  CHECK(t.total_area == doctest::Approx(6.0));

  // st:hperm:vperm takes 1-based permutation digits.
  const TranslationSurface l3 = load_surface("st:213:321");
  CHECK(l3.faces.size() == 3);

  CHECK_THROWS_AS(load_surface("torus:axb"), ParseError);
  for (const auto& name : builtin_surface_names())
    CHECK(validate(load_surface(name)).valid());
}
