#include "orbikink/flip.hpp"

#include <algorithm>
#include <cstdlib>

#include "orbikink/errors.hpp"

namespace orbikink {

namespace {

std::string side_edge_label(const Side& s) { return (s.boundary ? "b:" : "a:") + s.label; }

struct ArcSlots {
  std::vector<std::pair<std::size_t, int>> slots;  // (triangle index, side index)
};

ArcSlots slots_of(const Triangulation& t, const std::string& arc) {
  ArcSlots out;
  for (std::size_t ti = 0; ti < t.triangles.size(); ++ti) {
    for (int i = 0; i < 3; ++i) {
      const Side& s = t.triangles[ti].sides[i];
      if (!s.boundary && s.label == arc) out.slots.emplace_back(ti, i);
    }
  }
  return out;
}

void rename_arc(Triangulation& t, const std::string& from, const std::string& to) {
  if (std::find(t.arcs.begin(), t.arcs.end(), to) != t.arcs.end() ||
      std::find(t.boundary_segments.begin(), t.boundary_segments.end(), to) != t.boundary_segments.end()) {
    throw NotFlippable("flipped arc label '" + to + "' is already in use");
  }
  std::replace(t.arcs.begin(), t.arcs.end(), from, to);
}

const Side& side_at(const Triangle& tri, int i) { return tri.sides[static_cast<std::size_t>((i + 3) % 3)]; }
Side& side_at(Triangle& tri, int i) { return tri.sides[static_cast<std::size_t>((i + 3) % 3)]; }

// Indices of the two ordinary triangles sharing `arc`, and the arc's slot in
// each. Throws NotFlippable otherwise.
struct Quad {
  std::size_t t1;
  int i1;
  std::size_t t2;
  int i2;
};

Quad find_quad(const Triangulation& t, const std::string& arc) {
  if (std::find(t.arcs.begin(), t.arcs.end(), arc) == t.arcs.end()) {
    throw NotFlippable("no arc named '" + arc + "'");
  }
  const auto s = slots_of(t, arc).slots;
  if (s.size() != 2 || s[0].first == s[1].first) throw NotFlippable("arc '" + arc + "' is not a diagonal");
  for (const auto& [ti, i] : s) {
    if (t.triangles[ti].self_folded) {
      throw NotFlippable("arc '" + arc + "' is a loop or radius of a self-folded triangle");
    }
  }
  return {s[0].first, s[0].second, s[1].first, s[1].second};
}

struct Fold {
  std::size_t outer;
  int loop_index;
  std::size_t folded;
};

Fold find_fold(const Triangulation& t, const std::string& name) {
  std::size_t v = t.triangles.size();
  for (std::size_t ti = 0; ti < t.triangles.size(); ++ti) {
    if (t.triangles[ti].name == name) v = ti;
  }
  if (v == t.triangles.size()) throw NotFlippable("no triangle named '" + name + "'");
  if (!t.triangles[v].self_folded) throw NotFlippable("triangle '" + name + "' is not self-folded");
  for (const auto& [ti, i] : slots_of(t, t.triangles[v].loop()).slots) {
    if (ti != v) return {ti, i, v};
  }
  throw NotFlippable("self-folded triangle '" + name + "' has no outer triangle");
}

void require_valid_result(const Triangulation& t) {
  const auto diagnostics = validate_signature_zero(t);
  if (!diagnostics.empty()) {
    throw NotFlippable("flip leaves the signature-zero class: " + diagnostics.front().message);
  }
}

std::string canonical_triangle(const Triangle& tri) {
  std::vector<std::string> best;
  for (int k = 0; k < 3; ++k) {
    std::vector<std::string> v;
    for (int i = 0; i < 3; ++i) {
      const Side& s = side_at(tri, k + i);
      v.push_back(s.boundary ? "bd:" + s.label : s.label);
    }
    if (best.empty() || v < best) best = v;
  }
  std::string out = tri.self_folded ? "F" : "O";
  for (const auto& s : best) out += "|" + s;
  return out;
}

}  // namespace

std::string toggled_label(const std::string& arc) {
  if (!arc.empty() && arc.back() == '\'') return arc.substr(0, arc.size() - 1);
  return arc + "'";
}

Triangulation flip(const Triangulation& t, const FlipMove& move) {
  if (!validate_signature_zero(t).empty()) throw InputError("cannot flip an invalid triangulation");
  Triangulation out = t;
  if (move.kind == FlipMove::Kind::standard) {
    const Quad q = find_quad(t, move.target);
    const Triangle& a = t.triangles[q.t1];
    const Triangle& b = t.triangles[q.t2];
    const Side x1 = side_at(a, q.i1 + 1);
    const Side x2 = side_at(a, q.i1 + 2);
    const Side y1 = side_at(b, q.i2 + 1);
    const Side y2 = side_at(b, q.i2 + 2);
    const Side diagonal{toggled_label(move.target)};
    rename_arc(out, move.target, diagonal.label);
    Triangle& na = out.triangles[q.t1];
    Triangle& nb = out.triangles[q.t2];
    side_at(na, q.i1) = diagonal;
    side_at(na, q.i1 + 1) = x2;
    side_at(na, q.i1 + 2) = y1;
    side_at(nb, q.i2) = diagonal;
    side_at(nb, q.i2 + 1) = y2;
    side_at(nb, q.i2 + 2) = x1;
  } else {
    const Fold f = find_fold(t, move.target);
    const Triangle& o = t.triangles[f.outer];
    const Side a = side_at(o, f.loop_index + 1);
    const Side b = side_at(o, f.loop_index + 2);
    const std::string loop = toggled_label(t.triangles[f.folded].loop());
    const std::string radius = toggled_label(t.triangles[f.folded].radius());
    rename_arc(out, t.triangles[f.folded].loop(), loop);
    rename_arc(out, t.triangles[f.folded].radius(), radius);
    Triangle& no = out.triangles[f.outer];
    side_at(no, f.loop_index) = Side{loop};
    side_at(no, f.loop_index + 1) = b;
    side_at(no, f.loop_index + 2) = a;
    out.triangles[f.folded] = Triangle::folded(t.triangles[f.folded].name, loop, radius);
  }
  require_valid_result(out);
  return out;
}

FlipMove inverse_move(const FlipMove& move) {
  if (move.kind == FlipMove::Kind::standard) return {move.kind, toggled_label(move.target)};
  return move;
}

bool equivalent_up_to_relabeling(const Triangulation& a, const Triangulation& b) {
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (sorted(a.arcs) != sorted(b.arcs) || sorted(a.boundary_segments) != sorted(b.boundary_segments)) return false;
  std::vector<std::string> ta, tb;
  for (const auto& t : a.triangles) ta.push_back(canonical_triangle(t));
  for (const auto& t : b.triangles) tb.push_back(canonical_triangle(t));
  return sorted(ta) == sorted(tb);
}

FlipTransport::FlipTransport(const Triangulation& t, FlipMove move)
    : move_(std::move(move)),
      source_(std::make_shared<const Triangulation>(t)),
      target_(std::make_shared<const Triangulation>(flip(t, move_))),
      source_graph_(std::make_shared<const LeafyDualGraph>(leafy_dual_graph(*source_))),
      target_graph_(std::make_shared<const LeafyDualGraph>(leafy_dual_graph(*target_))) {
  if (move_.kind == FlipMove::Kind::standard) {
    const Quad q = find_quad(t, move_.target);
    t1_ = t.triangles[q.t1].name;
    t2_ = t.triangles[q.t2].name;
    diagonal_ = move_.target;
    const Triangle& a = t.triangles[q.t1];
    const Triangle& b = t.triangles[q.t2];
    // New triangle holding each old side slot.
    slot_target_[{t1_, side_edge_label(side_at(a, q.i1 + 1))}] = t2_;
    slot_target_[{t1_, side_edge_label(side_at(a, q.i1 + 2))}] = t1_;
    slot_target_[{t2_, side_edge_label(side_at(b, q.i2 + 1))}] = t1_;
    slot_target_[{t2_, side_edge_label(side_at(b, q.i2 + 2))}] = t2_;
  } else {
    const Fold f = find_fold(t, move_.target);
    outer_ = t.triangles[f.outer].name;
    folded_ = t.triangles[f.folded].name;
    loop_ = t.triangles[f.folded].loop();
    side_a_ = side_edge_label(side_at(t.triangles[f.outer], f.loop_index + 1));
    side_b_ = side_edge_label(side_at(t.triangles[f.outer], f.loop_index + 2));
  }
}

bool FlipTransport::in_region(VertexId u) const {
  const VertexInfo& info = source_graph_->info(u);
  if (move_.kind == FlipMove::Kind::standard) {
    return info.kind == VertexKind::triangle && (info.name == t1_ || info.name == t2_);
  }
  if (info.kind == VertexKind::triangle) return info.name == outer_ || info.name == folded_;
  return info.kind == VertexKind::w || info.kind == VertexKind::z ? info.name == folded_ : false;
}

std::vector<std::string> FlipTransport::standard_labels(const Walk& w, bool closed, std::string& start) const {
  const RibbonGraph& g = source_graph_->graph;
  const EdgeId diagonal = g.edge("a:" + diagonal_);
  const std::string new_diagonal = "a:" + toggled_label(diagonal_);
  const auto vs = vertex_sequence(g, w);
  const std::size_t n = w.length();
  auto tri = [&](VertexId u) { return source_graph_->info(u).name; };
  auto target_of = [&](VertexId u, EdgeId e) { return slot_target_.at({tri(u), g.label(e)}); };

  std::vector<std::string> out;
  std::string entry;
  start = g.label(w.start);
  if (closed && in_region(w.start)) {
    // The walk was rotated to end with a side crossing, which is where the
    // current stay inside the quadrilateral began.
    entry = target_of(w.start, w.edges.back());
    start = "t:" + entry;
  }
  for (std::size_t l = 0; l < n; ++l) {
    const EdgeId e = w.edges[l];
    if (e == diagonal) continue;
    if (in_region(vs[l]) && target_of(vs[l], e) != entry) out.push_back(new_diagonal);
    out.push_back(g.label(e));
    if (in_region(vs[l + 1])) entry = target_of(vs[l + 1], e);
  }
  return out;
}

std::vector<std::string> FlipTransport::double_labels(const Walk& w) const {
  const RibbonGraph& g = source_graph_->graph;
  const SelfFoldedCluster& k = source_graph_->cluster(folded_);
  const VertexId outer = g.vertex("t:" + outer_);
  const std::string new_loop = "a:" + toggled_label(loop_);
  const std::string eta1 = g.label(k.eta1);
  const std::string eta2 = g.label(k.eta2);
  const auto vs = vertex_sequence(g, w);
  const std::size_t n = w.length();

  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < n) {
    const std::string in = g.label(w.edges[i]);
    out.push_back(in);
    if (vs[i + 1] != outer) {
      ++i;
      continue;
    }
    ++i;
    // Winding around the puncture: +1 per (eta1, eta2), -1 per (eta2, eta1).
    long winding = 0;
    if (w.edges[i] == k.loop_dual) {
      ++i;
      const long sign = w.edges[i] == k.eta1 ? 1 : -1;
      std::size_t run = 0;
      while (source_graph_->is_eta(w.edges[i])) {
        ++run;
        ++i;
      }
      winding = sign * static_cast<long>(run / 2);
      ++i;  // back across the loop
    }
    const std::string exit = g.label(w.edges[i]);
    if (in == side_a_ && exit == side_b_) ++winding;
    if (in == side_b_ && exit == side_a_) --winding;
    if (winding != 0) {
      out.push_back(new_loop);
      for (long t = 0; t < std::abs(winding); ++t) {
        out.push_back(winding > 0 ? eta1 : eta2);
        out.push_back(winding > 0 ? eta2 : eta1);
      }
      out.push_back(new_loop);
    }
  }
  return out;
}

Walk FlipTransport::to_target(const std::string& start, const std::vector<std::string>& labels) const {
  const RibbonGraph& h = target_graph_->graph;
  std::vector<EdgeId> word;
  word.reserve(labels.size());
  for (const auto& l : labels) word.push_back(h.edge(l));
  return standard_form(h, h.vertex(start), word);
}

Walk FlipTransport::transport(const Walk& w) const {
  if (!w.is_identity() && (in_region(w.start) || in_region(w.finish))) {
    throw InputError("walk endpoints lie inside the flipped region");
  }
  if (w.is_identity()) return identity_at(target_graph_->graph.vertex(source_graph_->graph.label(w.start)));
  std::string start;
  const auto labels = move_.kind == FlipMove::Kind::standard ? standard_labels(w, false, start) : double_labels(w);
  if (move_.kind != FlipMove::Kind::standard) start = source_graph_->graph.label(w.start);
  return to_target(start, labels);
}

ClosedWalkClass FlipTransport::transport(const ClosedWalkClass& c) const {
  const RibbonGraph& g = source_graph_->graph;
  const Walk& w = c.representative();
  const std::size_t n = w.length();
  if (move_.kind == FlipMove::Kind::standard) {
    const EdgeId diagonal = g.edge("a:" + diagonal_);
    std::size_t k = 0;
    while (k < n && w.edges[k] == diagonal) ++k;
    const Walk rotated = rotate(g, w, (k + 1) % n);
    std::string start;
    const auto labels = standard_labels(rotated, true, start);
    return canonical_closed(target_graph_->graph, to_target(start, labels));
  }
  const auto vs = vertex_sequence(g, w);
  std::size_t k = 0;
  while (k < n && in_region(vs[k])) ++k;
  if (k == n) {
    // A pure eta cycle around the puncture; its labels survive the flip.
    std::vector<std::string> labels;
    for (EdgeId e : w.edges) labels.push_back(g.label(e));
    return canonical_closed(target_graph_->graph, to_target(g.label(w.start), labels));
  }
  const Walk rotated = rotate(g, w, k);
  return canonical_closed(target_graph_->graph, to_target(g.label(rotated.start), double_labels(rotated)));
}

Walk transport_walk(const Triangulation& t, const FlipMove& move, const Walk& w) {
  return FlipTransport(t, move).transport(w);
}

}  // namespace orbikink
