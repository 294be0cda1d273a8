#pragma once

#include <string>

#include "orbikink/document.hpp"
#include "orbikink/triangulation.hpp"

namespace fixtures {

inline orbikink::Triangulation annulus() {
  return orbikink::read_triangulation_file(std::string(ORBIKINK_DATA_DIR) + "/annulus.json");
}

// Walks on the annulus between the boundary segments alpha and nu.
inline constexpr const char* f1 = "s:alpha b:alpha a:beta a:gamma a:delta a:epsilon a:kappa b:nu s:nu";
inline constexpr const char* f2 =
    "s:alpha b:alpha a:beta a:gamma a:lambda eta1:v1 eta2:v1 a:lambda a:delta a:epsilon a:kappa b:nu s:nu";
inline constexpr const char* f3 =
    "s:alpha b:alpha a:beta a:gamma a:lambda eta1:v1 eta2:v1 eta1:v1 eta2:v1 a:lambda a:delta a:epsilon a:kappa "
    "b:nu s:nu";
inline constexpr const char* f4 =
    "s:alpha b:alpha a:beta a:gamma a:lambda eta2:v1 eta1:v1 a:lambda a:delta a:epsilon a:kappa b:nu s:nu";

// Two punctures around one ordinary triangle with a single boundary segment.
inline orbikink::Triangulation two_punctures() {
  return orbikink::parse_triangulation(R"({
    "arcs": ["x1", "r1", "x2", "r2"],
    "boundary_segments": ["s1"],
    "triangles": [
      {"name": "T1", "sides": ["x2", "bd:s1", "x1"]},
      {"name": "V1", "self_folded": {"loop": "x1", "radius": "r1"}},
      {"name": "V2", "self_folded": {"loop": "x2", "radius": "r2"}}
    ]})");
}

}  // namespace fixtures
