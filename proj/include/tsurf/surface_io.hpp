#pragma once

#include <string>

#include "tsurf/surface.hpp"

namespace tsurf {

// JSON surface format:
//   { "name": string,
//     "faces": [[[x, y], ...], ...],
//     "gluings": [{"fa": i, "ea": j, "fb": k, "eb": l}, ...],
//     "marked": [[face, x, y], ...] }
// Numbers are emitted with round-trip precision (>= 15 significant digits).
std::string surface_to_json(const TranslationSurface& s);
TranslationSurface surface_from_json(const std::string& text,
                                     const std::string& origin = "<string>");

void save_surface_json(const TranslationSurface& s, const std::string& path);
TranslationSurface load_surface_json(const std::string& path);

// Builtin registry: torus, torus:WxH, st-L3, octagon, billiard-rect:a:b,
// billiard-tri:q, st:hperm:vperm (permutations as digit strings or
// comma-separated 1-based images, e.g. st:213:321). Anything else is treated
// as a file path.
bool is_builtin_name(const std::string& name);
TranslationSurface load_surface(const std::string& name_or_path);
// The fixed builtin names used by audits/tests.
std::vector<std::string> builtin_surface_names();

}  // namespace tsurf
