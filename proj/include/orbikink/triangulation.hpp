#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "orbikink/ribbon_graph.hpp"

namespace orbikink {

// A side of a triangle: either an arc or a boundary segment.
struct Side {
  std::string label;
  bool boundary = false;

  friend bool operator==(const Side&, const Side&) = default;
};

// Sides are listed clockwise. A self-folded triangle stores (loop, radius,
// radius).
struct Triangle {
  std::string name;
  std::array<Side, 3> sides;
  bool self_folded = false;

  static Triangle ordinary(std::string name, Side a, Side b, Side c);
  static Triangle folded(std::string name, std::string loop, std::string radius);

  const std::string& loop() const { return sides[0].label; }
  const std::string& radius() const { return sides[1].label; }

  friend bool operator==(const Triangle&, const Triangle&) = default;
};

struct Triangulation {
  std::vector<std::string> arcs;
  std::vector<std::string> boundary_segments;
  std::vector<Triangle> triangles;

  const Triangle* find_triangle(std::string_view name) const;

  friend bool operator==(const Triangulation&, const Triangulation&) = default;
};

std::vector<Diagnostic> validate_signature_zero(const Triangulation& t);

// Topological data recovered from the gluing pattern. Only meaningful for a
// triangulation that passes validate_signature_zero.
struct SurfaceSummary {
  int marked_points = 0;
  int punctures = 0;
  std::vector<int> boundary_marked;  // marked points per boundary component, sorted
  int euler_characteristic = 0;
  int genus = 0;
};

SurfaceSummary summarize(const Triangulation& t);

enum class EdgeKind { arc, boundary, eta, leaf };
enum class VertexKind { triangle, segment, w, z };

struct EdgeInfo {
  EdgeKind kind;
  std::string name;  // arc, segment or self-folded triangle name
  int eta_index = 0;  // 1 or 2 for eta edges
};

struct VertexInfo {
  VertexKind kind;
  std::string name;  // triangle or segment name
  bool self_folded = false;
};

// G(tau). Radii of self-folded triangles become loops labeled "a:<radius>".
struct DualGraph {
  RibbonGraph graph;
  std::vector<EdgeInfo> edges;
  std::vector<VertexInfo> vertices;
};

struct SelfFoldedCluster {
  std::string name;
  std::string radius;
  VertexId v;
  VertexId w;
  VertexId z;
  EdgeId loop_dual;
  EdgeId eta1;
  EdgeId eta2;
  EdgeId leaf;
};

class LeafyDualGraph {
 public:
  RibbonGraph graph;
  std::vector<EdgeInfo> edges;
  std::vector<VertexInfo> vertices;
  std::vector<SelfFoldedCluster> clusters;

  const EdgeInfo& info(EdgeId e) const { return edges[e.value()]; }
  const VertexInfo& info(VertexId u) const { return vertices[u.value()]; }

  bool is_eta(EdgeId e) const { return info(e).kind == EdgeKind::eta; }
  // Cluster owning an eta or leaf edge, or whose v/w/z vertex is u.
  const SelfFoldedCluster* cluster_of(EdgeId e) const;
  const SelfFoldedCluster* cluster_at(VertexId u) const;
  const SelfFoldedCluster& cluster(std::string_view name) const;

  // Boundary-segment vertices: the objects of the groupoid.
  bool is_basepoint(VertexId u) const { return info(u).kind == VertexKind::segment; }
  // Vertex of G(tau) that is not a self-folded triangle.
  bool is_regular(VertexId u) const;

  std::vector<VertexId> basepoints() const;

 private:
  friend LeafyDualGraph leafy_dual_graph(const Triangulation& t);
  std::vector<int> edge_cluster_;
  std::vector<int> vertex_cluster_;
};

// Both throw InputError listing the diagnostics if t is invalid.
DualGraph dual_graph(const Triangulation& t);
LeafyDualGraph leafy_dual_graph(const Triangulation& t);

// Removes every {eta1, eta2, leaf, w, z} cluster and fuses the etas back into
// the radius loop.
DualGraph collapse_leaves(const LeafyDualGraph& g);

// Label-preserving isomorphism test, including rotations.
bool same_labeled_graph(const RibbonGraph& a, const RibbonGraph& b);

std::string edge_label(const EdgeInfo& info);
std::string vertex_label(const VertexInfo& info);

}  // namespace orbikink
