#include "orbikink/dot.hpp"

#include <map>
#include <sstream>

namespace orbikink {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::size_t position_at(const RibbonGraph& g, DartId d) {
  const auto darts = g.darts_at(g.dart(d).vertex);
  for (std::size_t i = 0; i < darts.size(); ++i) {
    if (darts[i] == d) return i;
  }
  return 0;
}

}  // namespace

std::string to_dot(const RibbonGraph& g, const std::optional<Walk>& highlight) {
  std::map<EdgeId, int> used;
  if (highlight) {
    for (EdgeId e : highlight->edges) ++used[e];
  }

  std::ostringstream out;
  out << "graph ribbon {\n";
  out << "  // rotation order is advisory: DOT layouts ignore it\n";
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    const VertexId u{v};
    out << "  // rotation " << g.label(u) << ":";
    for (DartId d : g.darts_at(u)) out << ' ' << g.label(g.dart(d).edge);
    out << '\n';
    out << "  " << quoted(g.label(u)) << ";\n";
  }
  for (std::uint32_t i = 0; i < g.edge_count(); ++i) {
    const EdgeId e{i};
    const auto darts = g.darts_of(e);
    const DartId a = darts[0];
    const DartId b = darts[1];
    out << "  " << quoted(g.label(g.dart(a).vertex)) << " -- " << quoted(g.label(g.dart(b).vertex)) << " [label="
        << quoted(g.label(e)) << ", taillabel=" << position_at(g, a) << ", headlabel=" << position_at(g, b);
    if (auto it = used.find(e); it != used.end()) {
      out << ", penwidth=3, xlabel=" << quoted("x" + std::to_string(it->second));
    }
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace orbikink
