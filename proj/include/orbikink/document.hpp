#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orbikink/flip.hpp"
#include "orbikink/kink.hpp"
#include "orbikink/triangulation.hpp"
#include "orbikink/walk.hpp"

namespace orbikink {

// Triangulation documents:
//   {"arcs": [...], "boundary_segments": [...],
//    "triangles": [{"name": "T", "sides": ["x", "y", "bd:s"]},
//                  {"name": "V", "self_folded": {"loop": "l", "radius": "r"}}]}
// Throws ParseError on malformed JSON or a wrong shape. The result is not
// validated.
Triangulation parse_triangulation(std::string_view text);
Triangulation read_triangulation_file(const std::string& path);
std::string dump_triangulation(const Triangulation& t);

// Flip scripts: [{"kind": "standard" | "double", "target": "<label>"}, ...]
std::vector<FlipMove> parse_flip_script(std::string_view text);
std::string dump_flip_script(const std::vector<FlipMove>& moves);

// Walk text: "<vertex> <edge>* [<vertex>]", whitespace separated. Labels
// carry prefixes (t:, s:, w:, z: for vertices; a:, b:, eta1:, eta2:, leaf:
// for edges) so tokens are unambiguous.
struct WalkText {
  VertexId start;
  std::vector<EdgeId> edges;
  std::optional<VertexId> finish;
};

// Unknown labels and grammar errors throw ParseError.
WalkText parse_walk_text(const RibbonGraph& g, std::string_view text);
// Parses and brings the word to standard form; a trailing vertex must match
// the end of the walk (InputError otherwise).
Walk read_walk(const RibbonGraph& g, std::string_view text);
std::string format_walk(const RibbonGraph& g, const Walk& w);

std::string kink_json(const Kink& k);

}  // namespace orbikink
