#include "orbikink/triangulation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "orbikink/errors.hpp"

namespace orbikink {

namespace {

struct Slot {
  std::size_t tri;
  int index;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

std::size_t corner(std::size_t tri, int i) { return 3 * tri + static_cast<std::size_t>((i + 3) % 3); }

// Occurrences of every arc and boundary segment, keyed by label.
struct Occurrences {
  std::map<std::string, std::vector<Slot>> arcs;
  std::map<std::string, std::vector<Slot>> segments;
};

Occurrences collect(const Triangulation& t) {
  Occurrences occ;
  for (const auto& a : t.arcs) occ.arcs[a];
  for (const auto& s : t.boundary_segments) occ.segments[s];
  for (std::size_t ti = 0; ti < t.triangles.size(); ++ti) {
    for (int i = 0; i < 3; ++i) {
      const Side& side = t.triangles[ti].sides[i];
      (side.boundary ? occ.segments : occ.arcs)[side.label].push_back({ti, i});
    }
  }
  return occ;
}

// Corner classes after gluing. Side i of a triangle runs clockwise from
// corner i-1 to corner i, so gluing two occurrences reverses direction.
UnionFind glue_corners(const Triangulation& t, const Occurrences& occ) {
  UnionFind uf(3 * t.triangles.size());
  for (const auto& [label, slots] : occ.arcs) {
    if (slots.size() != 2) continue;
    const Slot p = slots[0];
    const Slot q = slots[1];
    uf.unite(corner(p.tri, p.index - 1), corner(q.tri, q.index));
    uf.unite(corner(p.tri, p.index), corner(q.tri, q.index - 1));
  }
  return uf;
}

std::string side_text(const Side& s) { return s.boundary ? "bd:" + s.label : s.label; }

}  // namespace

Triangle Triangle::ordinary(std::string name, Side a, Side b, Side c) {
  return Triangle{std::move(name), {std::move(a), std::move(b), std::move(c)}, false};
}

Triangle Triangle::folded(std::string name, std::string loop, std::string radius) {
  return Triangle{std::move(name), {Side{std::move(loop)}, Side{radius}, Side{radius}}, true};
}

const Triangle* Triangulation::find_triangle(std::string_view name) const {
  for (const auto& tri : triangles) {
    if (tri.name == name) return &tri;
  }
  return nullptr;
}

std::vector<Diagnostic> validate_signature_zero(const Triangulation& t) {
  std::vector<Diagnostic> out;

  auto duplicates = [&](const std::vector<std::string>& labels, const std::string& what) {
    std::set<std::string> seen;
    for (const auto& l : labels) {
      if (l.empty()) out.push_back({"empty_label", what + " label is empty", {}});
      if (!seen.insert(l).second) out.push_back({"duplicate_label", "duplicate " + what + " label", {l}});
    }
  };
  duplicates(t.arcs, "arc");
  duplicates(t.boundary_segments, "boundary segment");
  std::vector<std::string> names;
  for (const auto& tri : t.triangles) names.push_back(tri.name);
  duplicates(names, "triangle");
  for (const auto& a : t.arcs) {
    if (std::find(t.boundary_segments.begin(), t.boundary_segments.end(), a) != t.boundary_segments.end()) {
      out.push_back({"duplicate_label", "label used for both an arc and a boundary segment", {a}});
    }
  }
  if (t.triangles.empty()) out.push_back({"empty", "triangulation has no triangles", {}});
  if (t.boundary_segments.empty()) out.push_back({"no_boundary", "surface has no boundary segments", {}});

  const std::set<std::string> arcs(t.arcs.begin(), t.arcs.end());
  const std::set<std::string> segments(t.boundary_segments.begin(), t.boundary_segments.end());
  for (const auto& tri : t.triangles) {
    for (const auto& side : tri.sides) {
      const auto& pool = side.boundary ? segments : arcs;
      if (!pool.count(side.label)) {
        out.push_back({"unknown_side", "triangle references unknown " +
                                           std::string(side.boundary ? "boundary segment" : "arc"),
                       {tri.name, side_text(side)}});
      }
    }
    if (tri.self_folded) {
      if (tri.sides[0].boundary || tri.sides[1].boundary || tri.sides[2].boundary ||
          !(tri.sides[1] == tri.sides[2]) || tri.sides[0] == tri.sides[1]) {
        out.push_back({"bad_self_folded", "self-folded triangle must be (loop, radius, radius) with distinct arcs",
                       {tri.name}});
      }
    } else {
      for (int i = 0; i < 3; ++i) {
        if (tri.sides[i] == tri.sides[(i + 1) % 3]) {
          out.push_back({"repeated_side", "ordinary triangle uses the same side twice",
                         {tri.name, side_text(tri.sides[i])}});
          break;
        }
      }
    }
  }
  if (!out.empty()) return out;

  const Occurrences occ = collect(t);
  for (const auto& [label, slots] : occ.arcs) {
    if (slots.size() != 2) {
      out.push_back({"arc_count", "arc occurs " + std::to_string(slots.size()) + " times instead of twice",
                     {label}});
    }
  }
  for (const auto& [label, slots] : occ.segments) {
    if (slots.size() != 1) {
      out.push_back({"segment_count",
                     "boundary segment occurs " + std::to_string(slots.size()) + " times instead of once",
                     {label}});
    }
  }
  for (std::size_t ti = 0; ti < t.triangles.size(); ++ti) {
    const Triangle& tri = t.triangles[ti];
    if (!tri.self_folded) continue;
    const auto& loop_slots = occ.arcs.at(tri.loop());
    for (const Slot& s : loop_slots) {
      if (s.tri != ti && t.triangles[s.tri].self_folded) {
        out.push_back({"loop_placement", "loop of a self-folded triangle must close up an ordinary triangle",
                       {tri.name, tri.loop()}});
      }
    }
  }
  if (!out.empty()) return out;

  // Connectivity of the dual graph.
  UnionFind comp(t.triangles.size());
  for (const auto& [label, slots] : occ.arcs) comp.unite(slots[0].tri, slots[1].tri);
  for (std::size_t ti = 1; ti < t.triangles.size(); ++ti) {
    if (comp.find(ti) != comp.find(0)) {
      out.push_back({"disconnected", "dual graph is disconnected", {t.triangles[ti].name}});
      return out;
    }
  }

  // Signature zero: the interior corner classes are exactly the punctures
  // enclosed by self-folded triangles.
  UnionFind uf = glue_corners(t, occ);
  std::set<std::size_t> on_boundary;
  for (const auto& [label, slots] : occ.segments) {
    on_boundary.insert(uf.find(corner(slots[0].tri, slots[0].index - 1)));
    on_boundary.insert(uf.find(corner(slots[0].tri, slots[0].index)));
  }
  std::set<std::size_t> interior;
  for (std::size_t c = 0; c < 3 * t.triangles.size(); ++c) {
    if (!on_boundary.count(uf.find(c))) interior.insert(uf.find(c));
  }
  std::set<std::size_t> enclosed;
  for (std::size_t ti = 0; ti < t.triangles.size(); ++ti) {
    if (!t.triangles[ti].self_folded) continue;
    const std::size_t p = uf.find(corner(ti, 1));
    if (!interior.count(p)) {
      out.push_back({"not_enclosed", "self-folded triangle does not enclose a puncture", {t.triangles[ti].name}});
    } else if (!enclosed.insert(p).second) {
      out.push_back({"shared_puncture", "two self-folded triangles enclose the same puncture",
                     {t.triangles[ti].name}});
    }
  }
  if (interior.size() > enclosed.size()) {
    out.push_back({"signature",
                   std::to_string(interior.size() - enclosed.size()) +
                       " puncture(s) not enclosed by a self-folded triangle",
                   {}});
  }
  return out;
}

SurfaceSummary summarize(const Triangulation& t) {
  const Occurrences occ = collect(t);
  UnionFind uf = glue_corners(t, occ);
  std::set<std::size_t> classes;
  for (std::size_t c = 0; c < 3 * t.triangles.size(); ++c) classes.insert(uf.find(c));

  std::map<std::size_t, std::vector<std::size_t>> boundary_adj;
  for (const auto& [label, slots] : occ.segments) {
    if (slots.size() != 1) continue;
    const std::size_t a = uf.find(corner(slots[0].tri, slots[0].index - 1));
    const std::size_t b = uf.find(corner(slots[0].tri, slots[0].index));
    boundary_adj[a].push_back(b);
    boundary_adj[b].push_back(a);
  }

  SurfaceSummary s;
  s.marked_points = static_cast<int>(boundary_adj.size());
  s.punctures = static_cast<int>(classes.size()) - s.marked_points;
  std::set<std::size_t> seen;
  for (const auto& [start, _] : boundary_adj) {
    if (seen.count(start)) continue;
    int size = 0;
    std::vector<std::size_t> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      ++size;
      for (std::size_t y : boundary_adj[x]) {
        if (seen.insert(y).second) stack.push_back(y);
      }
    }
    s.boundary_marked.push_back(size);
  }
  std::sort(s.boundary_marked.begin(), s.boundary_marked.end());
  s.euler_characteristic = static_cast<int>(classes.size()) -
                           static_cast<int>(t.arcs.size() + t.boundary_segments.size()) +
                           static_cast<int>(t.triangles.size());
  s.genus = (2 - s.euler_characteristic - static_cast<int>(s.boundary_marked.size())) / 2;
  return s;
}

std::string edge_label(const EdgeInfo& info) {
  switch (info.kind) {
    case EdgeKind::arc:
      return "a:" + info.name;
    case EdgeKind::boundary:
      return "b:" + info.name;
    case EdgeKind::eta:
      return "eta" + std::to_string(info.eta_index) + ":" + info.name;
    case EdgeKind::leaf:
      return "leaf:" + info.name;
  }
  return {};
}

std::string vertex_label(const VertexInfo& info) {
  switch (info.kind) {
    case VertexKind::triangle:
      return "t:" + info.name;
    case VertexKind::segment:
      return "s:" + info.name;
    case VertexKind::w:
      return "w:" + info.name;
    case VertexKind::z:
      return "z:" + info.name;
  }
  return {};
}

namespace {

void require_valid(const Triangulation& t) {
  const auto diagnostics = validate_signature_zero(t);
  if (diagnostics.empty()) return;
  std::ostringstream msg;
  msg << "invalid triangulation:";
  for (const auto& d : diagnostics) {
    msg << ' ' << d.message;
    for (const auto& s : d.subjects) msg << " [" << s << ']';
    msg << ';';
  }
  throw InputError(msg.str());
}

// Shared construction of G(tau) and the leafy graph. In leafy mode each
// radius loop is replaced by the eta/leaf cluster.
struct Construction {
  RibbonGraph::Builder builder;
  std::vector<EdgeInfo> edges;
  std::vector<VertexInfo> vertices;
  std::vector<VertexId> tri_vertex;
  std::vector<std::array<DartId, 3>> slot_dart;

  VertexId vertex(VertexInfo info) {
    vertices.push_back(info);
    return builder.add_vertex(vertex_label(info));
  }
  EdgeId edge(EdgeInfo info, VertexId u, VertexId v) {
    edges.push_back(info);
    return builder.add_edge(edge_label(info), u, v);
  }
};

Construction construct(const Triangulation& t, bool leafy, std::vector<SelfFoldedCluster>* clusters) {
  require_valid(t);
  const Occurrences occ = collect(t);
  Construction c;
  c.slot_dart.resize(t.triangles.size());

  for (const auto& tri : t.triangles) {
    c.tri_vertex.push_back(c.vertex({VertexKind::triangle, tri.name, tri.self_folded}));
  }
  std::map<std::string, VertexId> seg_vertex;
  for (const auto& s : t.boundary_segments) seg_vertex[s] = c.vertex({VertexKind::segment, s, false});
  std::vector<std::pair<VertexId, VertexId>> wz(t.triangles.size());
  if (leafy) {
    for (std::size_t ti = 0; ti < t.triangles.size(); ++ti) {
      if (!t.triangles[ti].self_folded) continue;
      const VertexId w = c.vertex({VertexKind::w, t.triangles[ti].name, false});
      const VertexId z = c.vertex({VertexKind::z, t.triangles[ti].name, false});
      wz[ti] = {w, z};
    }
  }

  std::set<std::string> radii;
  for (const auto& tri : t.triangles) {
    if (tri.self_folded) radii.insert(tri.radius());
  }
  for (const auto& arc : t.arcs) {
    if (radii.count(arc)) continue;
    const auto& slots = occ.arcs.at(arc);
    const EdgeId e = c.edge({EdgeKind::arc, arc}, c.tri_vertex[slots[0].tri], c.tri_vertex[slots[1].tri]);
    c.slot_dart[slots[0].tri][slots[0].index] = DartId(2 * e.value());
    c.slot_dart[slots[1].tri][slots[1].index] = DartId(2 * e.value() + 1);
  }
  for (const auto& seg : t.boundary_segments) {
    const Slot s = occ.segments.at(seg).front();
    const EdgeId e = c.edge({EdgeKind::boundary, seg}, c.tri_vertex[s.tri], seg_vertex.at(seg));
    c.slot_dart[s.tri][s.index] = DartId(2 * e.value());
  }

  for (std::size_t ti = 0; ti < t.triangles.size(); ++ti) {
    const Triangle& tri = t.triangles[ti];
    const VertexId v = c.tri_vertex[ti];
    if (!tri.self_folded) {
      c.builder.set_rotation(v, {c.slot_dart[ti].begin(), c.slot_dart[ti].end()});
      continue;
    }
    if (!leafy) {
      const EdgeId loop = c.edge({EdgeKind::arc, tri.radius()}, v, v);
      c.builder.set_rotation(v, {c.slot_dart[ti][0], DartId(2 * loop.value()), DartId(2 * loop.value() + 1)});
      continue;
    }
    const auto [w, z] = wz[ti];
    const EdgeId eta1 = c.edge({EdgeKind::eta, tri.name, 1}, v, w);
    const EdgeId eta2 = c.edge({EdgeKind::eta, tri.name, 2}, v, w);
    const EdgeId leaf = c.edge({EdgeKind::leaf, tri.name}, w, z);
    c.builder.set_rotation(v, {c.slot_dart[ti][0], DartId(2 * eta1.value()), DartId(2 * eta2.value())});
    c.builder.set_rotation(w, {DartId(2 * eta2.value() + 1), DartId(2 * eta1.value() + 1),
                               DartId(2 * leaf.value())});
    const DartId loop_dart = c.slot_dart[ti][0];
    // The loop arc's edge is the one whose dart sits in the loop slot.
    const EdgeId loop_edge(loop_dart.value() / 2);
    clusters->push_back({tri.name, tri.radius(), v, w, z, loop_edge, eta1, eta2, leaf});
  }
  return c;
}

}  // namespace

DualGraph dual_graph(const Triangulation& t) {
  Construction c = construct(t, false, nullptr);
  return DualGraph{std::move(c.builder).build(true), std::move(c.edges), std::move(c.vertices)};
}

LeafyDualGraph leafy_dual_graph(const Triangulation& t) {
  std::vector<SelfFoldedCluster> clusters;
  Construction c = construct(t, true, &clusters);
  LeafyDualGraph g;
  g.graph = std::move(c.builder).build(false);
  g.edges = std::move(c.edges);
  g.vertices = std::move(c.vertices);
  g.clusters = std::move(clusters);
  g.edge_cluster_.assign(g.graph.edge_count(), -1);
  g.vertex_cluster_.assign(g.graph.vertex_count(), -1);
  for (std::size_t i = 0; i < g.clusters.size(); ++i) {
    const auto& k = g.clusters[i];
    const int idx = static_cast<int>(i);
    g.edge_cluster_[k.eta1.value()] = g.edge_cluster_[k.eta2.value()] = g.edge_cluster_[k.leaf.value()] = idx;
    g.vertex_cluster_[k.v.value()] = g.vertex_cluster_[k.w.value()] = g.vertex_cluster_[k.z.value()] = idx;
  }
  return g;
}

const SelfFoldedCluster* LeafyDualGraph::cluster_of(EdgeId e) const {
  const int i = edge_cluster_.at(e.value());
  return i < 0 ? nullptr : &clusters[static_cast<std::size_t>(i)];
}

const SelfFoldedCluster* LeafyDualGraph::cluster_at(VertexId u) const {
  const int i = vertex_cluster_.at(u.value());
  return i < 0 ? nullptr : &clusters[static_cast<std::size_t>(i)];
}

const SelfFoldedCluster& LeafyDualGraph::cluster(std::string_view name) const {
  for (const auto& k : clusters) {
    if (k.name == name) return k;
  }
  throw InputError("no self-folded triangle named '" + std::string(name) + "'");
}

bool LeafyDualGraph::is_regular(VertexId u) const {
  const VertexInfo& i = info(u);
  return i.kind == VertexKind::segment || (i.kind == VertexKind::triangle && !i.self_folded);
}

std::vector<VertexId> LeafyDualGraph::basepoints() const {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const VertexId u(static_cast<VertexId::value_type>(i));
    if (is_basepoint(u)) out.push_back(u);
  }
  return out;
}

DualGraph collapse_leaves(const LeafyDualGraph& g) {
  const RibbonGraph& lg = g.graph;
  RibbonGraph::Builder b;
  DualGraph out;
  std::vector<VertexId> new_vertex(lg.vertex_count());
  for (std::size_t i = 0; i < lg.vertex_count(); ++i) {
    const VertexInfo& info = g.vertices[i];
    if (info.kind == VertexKind::w || info.kind == VertexKind::z) continue;
    out.vertices.push_back(info);
    new_vertex[i] = b.add_vertex(lg.label(VertexId(static_cast<VertexId::value_type>(i))));
  }

  std::vector<DartId> new_dart(lg.dart_count());
  for (std::size_t i = 0; i < lg.edge_count(); ++i) {
    const EdgeInfo& info = g.edges[i];
    if (info.kind == EdgeKind::eta || info.kind == EdgeKind::leaf) continue;
    const EdgeId e(static_cast<EdgeId::value_type>(i));
    const auto ds = lg.darts_of(e);
    const EdgeId ne = b.add_edge(lg.label(e), new_vertex[lg.dart(ds[0]).vertex.value()],
                                 new_vertex[lg.dart(ds[1]).vertex.value()]);
    out.edges.push_back(info);
    new_dart[ds[0].value()] = DartId(2 * ne.value());
    new_dart[ds[1].value()] = DartId(2 * ne.value() + 1);
  }
  for (const auto& k : g.clusters) {
    const EdgeInfo loop{EdgeKind::arc, k.radius};
    out.edges.push_back(loop);
    const VertexId v = new_vertex[k.v.value()];
    const EdgeId ne = b.add_edge(edge_label(loop), v, v);
    new_dart[lg.darts_of(k.eta1)[0].value()] = DartId(2 * ne.value());
    new_dart[lg.darts_of(k.eta2)[0].value()] = DartId(2 * ne.value() + 1);
  }
  for (std::size_t i = 0; i < lg.vertex_count(); ++i) {
    const VertexInfo& info = g.vertices[i];
    if (info.kind == VertexKind::w || info.kind == VertexKind::z) continue;
    std::vector<DartId> rotation;
    for (DartId d : lg.darts_at(VertexId(static_cast<VertexId::value_type>(i)))) {
      rotation.push_back(new_dart[d.value()]);
    }
    b.set_rotation(new_vertex[i], std::move(rotation));
  }
  out.graph = std::move(b).build(true);
  return out;
}

namespace {

// Rotation at each vertex written with labels only, rotated to its least
// cyclic shift so that dart and edge ids do not matter.
std::map<std::string, std::vector<std::string>> labeled_rotations(const RibbonGraph& g) {
  std::map<std::string, std::vector<std::string>> out;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    const VertexId u(static_cast<VertexId::value_type>(i));
    std::vector<std::string> entries;
    for (DartId d : g.darts_at(u)) {
      const EdgeId e = g.dart(d).edge;
      const VertexId far = g.dart(g.opposite(d)).vertex;
      std::string entry = g.label(e) + ">" + g.label(far);
      if (far == u) entry += d.value() % 2 == 0 ? "#0" : "#1";
      entries.push_back(std::move(entry));
    }
    std::vector<std::string> best = entries;
    for (std::size_t k = 1; k < entries.size(); ++k) {
      std::rotate(entries.begin(), entries.begin() + 1, entries.end());
      best = std::min(best, entries);
    }
    out[g.label(u)] = std::move(best);
  }
  return out;
}

}  // namespace

bool same_labeled_graph(const RibbonGraph& a, const RibbonGraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  return labeled_rotations(a) == labeled_rotations(b);
}

}  // namespace orbikink
