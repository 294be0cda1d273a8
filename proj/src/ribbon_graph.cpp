#include "orbikink/ribbon_graph.hpp"

#include <algorithm>
#include <sstream>

#include "orbikink/errors.hpp"

namespace orbikink {

namespace {

template <typename Id>
bool in_range(Id id, std::size_t size) {
  return id.valid() && id.value() < size;
}

std::string dart_name(std::size_t d) { return "dart " + std::to_string(d); }

}  // namespace

RibbonGraph RibbonGraph::from_tables(Tables tables) {
  RibbonGraph g;
  g.tables_ = std::move(tables);
  const auto& t = g.tables_;
  const std::size_t n = t.darts.size();

  g.rotation_prev_.assign(n, DartId{});
  if (t.rotation_next.size() == n) {
    for (std::size_t d = 0; d < n; ++d) {
      if (in_range(t.rotation_next[d], n)) {
        g.rotation_prev_[t.rotation_next[d].value()] = DartId(static_cast<DartId::value_type>(d));
      }
    }
  }

  g.vertex_darts_.assign(t.vertex_labels.size(), {});
  g.edge_darts_.assign(t.edge_labels.size(), {});
  for (std::size_t d = 0; d < n; ++d) {
    const DartId id(static_cast<DartId::value_type>(d));
    if (in_range(t.darts[d].vertex, g.vertex_darts_.size())) {
      g.vertex_darts_[t.darts[d].vertex.value()].push_back(id);
    }
    if (in_range(t.darts[d].edge, g.edge_darts_.size())) {
      g.edge_darts_[t.darts[d].edge.value()].push_back(id);
    }
  }

  // Order each vertex's darts along its rotation cycle when that is possible.
  for (auto& ds : g.vertex_darts_) {
    if (ds.empty() || t.rotation_next.size() != n) continue;
    std::vector<DartId> cycle;
    DartId d = ds.front();
    while (cycle.size() < ds.size()) {
      cycle.push_back(d);
      d = t.rotation_next[d.value()];
      if (!in_range(d, n) || d == ds.front()) break;
    }
    std::vector<DartId> sorted_cycle = cycle;
    std::sort(sorted_cycle.begin(), sorted_cycle.end());
    if (sorted_cycle == ds) ds = std::move(cycle);
  }

  for (std::size_t i = 0; i < t.vertex_labels.size(); ++i) {
    g.vertex_by_label_.emplace(t.vertex_labels[i], VertexId(static_cast<VertexId::value_type>(i)));
  }
  for (std::size_t i = 0; i < t.edge_labels.size(); ++i) {
    g.edge_by_label_.emplace(t.edge_labels[i], EdgeId(static_cast<EdgeId::value_type>(i)));
  }
  return g;
}

bool RibbonGraph::incident(EdgeId e, VertexId u) const {
  for (DartId d : darts_of(e)) {
    if (dart(d).vertex == u) return true;
  }
  return false;
}

VertexId RibbonGraph::other_end(EdgeId e, VertexId u) const {
  const auto ends = endpoints(e);
  if (ends[0] == u) return ends[1];
  if (ends[1] == u) return ends[0];
  throw InputError("edge " + label(e) + " is not incident to vertex " + label(u));
}

std::array<VertexId, 2> RibbonGraph::endpoints(EdgeId e) const {
  const auto ds = darts_of(e);
  return {dart(ds[0]).vertex, dart(ds[1]).vertex};
}

std::optional<VertexId> RibbonGraph::find_vertex(std::string_view label) const {
  auto it = vertex_by_label_.find(std::string(label));
  if (it == vertex_by_label_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> RibbonGraph::find_edge(std::string_view label) const {
  auto it = edge_by_label_.find(std::string(label));
  if (it == edge_by_label_.end()) return std::nullopt;
  return it->second;
}

VertexId RibbonGraph::vertex(std::string_view label) const {
  if (auto v = find_vertex(label)) return *v;
  throw InputError("unknown vertex label '" + std::string(label) + "'");
}

EdgeId RibbonGraph::edge(std::string_view label) const {
  if (auto e = find_edge(label)) return *e;
  throw InputError("unknown edge label '" + std::string(label) + "'");
}

VertexId RibbonGraph::Builder::add_vertex(std::string label) {
  tables_.vertex_labels.push_back(std::move(label));
  rotations_.emplace_back();
  return VertexId(static_cast<VertexId::value_type>(tables_.vertex_labels.size() - 1));
}

EdgeId RibbonGraph::Builder::add_edge(std::string label, VertexId u, VertexId v) {
  const EdgeId e(static_cast<EdgeId::value_type>(tables_.edge_labels.size()));
  tables_.edge_labels.push_back(std::move(label));
  const DartId du(static_cast<DartId::value_type>(tables_.darts.size()));
  const DartId dv(du.value() + 1);
  tables_.darts.push_back({u, e});
  tables_.darts.push_back({v, e});
  tables_.involution.push_back(dv);
  tables_.involution.push_back(du);
  rotations_.at(u.value()).push_back(du);
  rotations_.at(v.value()).push_back(dv);
  return e;
}

void RibbonGraph::Builder::set_rotation(VertexId u, std::vector<DartId> clockwise) {
  auto expected = rotations_.at(u.value());
  auto given = clockwise;
  std::sort(expected.begin(), expected.end());
  std::sort(given.begin(), given.end());
  if (expected != given) {
    throw InputError("rotation at " + tables_.vertex_labels[u.value()] +
                     " does not list exactly the darts at that vertex");
  }
  rotations_[u.value()] = std::move(clockwise);
}

void RibbonGraph::Builder::set_rotation_by_edges(VertexId u, std::span<const EdgeId> clockwise) {
  std::vector<DartId> darts;
  darts.reserve(clockwise.size());
  for (EdgeId e : clockwise) darts.push_back(dart_at(e, u));
  set_rotation(u, std::move(darts));
}

DartId RibbonGraph::Builder::dart_at(EdgeId e, VertexId u) const {
  const DartId first(2 * e.value());
  const DartId second(2 * e.value() + 1);
  const bool at_first = tables_.darts.at(first.value()).vertex == u;
  const bool at_second = tables_.darts.at(second.value()).vertex == u;
  if (at_first && at_second) {
    throw InputError("edge " + tables_.edge_labels[e.value()] + " is a loop; give darts explicitly");
  }
  if (at_first) return first;
  if (at_second) return second;
  throw InputError("edge " + tables_.edge_labels[e.value()] + " is not incident to " +
                   tables_.vertex_labels[u.value()]);
}

RibbonGraph RibbonGraph::Builder::build(bool allow_loops) && {
  tables_.rotation_next.assign(tables_.darts.size(), DartId{});
  for (const auto& cycle : rotations_) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      tables_.rotation_next[cycle[i].value()] = cycle[(i + 1) % cycle.size()];
    }
  }
  RibbonGraph g = RibbonGraph::from_tables(std::move(tables_));
  const auto diagnostics = validate(g, allow_loops);
  if (!diagnostics.empty()) {
    std::ostringstream msg;
    msg << "invalid ribbon graph:";
    for (const auto& d : diagnostics) msg << ' ' << d.message << ';';
    throw InputError(msg.str());
  }
  return g;
}

std::vector<Diagnostic> validate(const RibbonGraph& g, bool allow_loops) {
  std::vector<Diagnostic> out;
  const auto& t = g.tables();
  const std::size_t n = t.darts.size();

  if (t.involution.size() != n || t.rotation_next.size() != n) {
    out.push_back({"table_size", "dart tables have inconsistent sizes", {}});
    return out;
  }

  bool darts_ok = true;
  for (std::size_t d = 0; d < n; ++d) {
    if (!in_range(t.darts[d].vertex, t.vertex_labels.size())) {
      out.push_back({"dart_vertex", "dart attached to unknown vertex", {dart_name(d)}});
      darts_ok = false;
    }
    if (!in_range(t.darts[d].edge, t.edge_labels.size())) {
      out.push_back({"dart_edge", "dart belongs to unknown edge", {dart_name(d)}});
      darts_ok = false;
    }
  }

  bool involution_ok = true;
  for (std::size_t d = 0; d < n; ++d) {
    const DartId partner = t.involution[d];
    if (!in_range(partner, n)) {
      out.push_back({"involution_range", "involution maps outside the dart set", {dart_name(d)}});
      involution_ok = false;
      continue;
    }
    if (partner.value() == d) {
      out.push_back({"involution_fixed_point", "involution has fixed point", {dart_name(d)}});
      involution_ok = false;
    } else if (t.involution[partner.value()].value() != d) {
      out.push_back({"involution_not_involutive", "involution is not an involution", {dart_name(d)}});
      involution_ok = false;
    }
  }

  if (darts_ok && involution_ok) {
    for (std::size_t d = 0; d < n; ++d) {
      const std::size_t p = t.involution[d].value();
      if (d < p && !(t.darts[d].edge == t.darts[p].edge)) {
        out.push_back({"edge_mismatch", "paired darts belong to different edges",
                       {dart_name(d), dart_name(p)}});
      }
      if (d < p && !allow_loops && t.darts[d].vertex == t.darts[p].vertex) {
        out.push_back({"loop", "edge is a loop", {t.edge_labels[t.darts[d].edge.value()]}});
      }
    }
    std::vector<int> darts_per_edge(t.edge_labels.size(), 0);
    for (const auto& dart : t.darts) ++darts_per_edge[dart.edge.value()];
    for (std::size_t e = 0; e < darts_per_edge.size(); ++e) {
      if (darts_per_edge[e] != 2) {
        out.push_back({"edge_darts", "edge does not have exactly two darts", {t.edge_labels[e]}});
      }
    }
  }

  if (darts_ok) {
    std::vector<int> hits(n, 0);
    bool permutation = true;
    for (std::size_t d = 0; d < n; ++d) {
      const DartId next = t.rotation_next[d];
      if (!in_range(next, n)) {
        out.push_back({"rotation_range", "rotation maps outside the dart set", {dart_name(d)}});
        permutation = false;
        continue;
      }
      ++hits[next.value()];
      if (!(t.darts[next.value()].vertex == t.darts[d].vertex)) {
        out.push_back({"rotation_vertex", "rotation moves a dart to another vertex", {dart_name(d)}});
        permutation = false;
      }
    }
    if (permutation && std::any_of(hits.begin(), hits.end(), [](int h) { return h != 1; })) {
      out.push_back({"rotation_permutation", "rotation is not a permutation", {}});
      permutation = false;
    }
    if (permutation) {
      for (std::size_t v = 0; v < t.vertex_labels.size(); ++v) {
        const auto ds = g.darts_at(VertexId(static_cast<VertexId::value_type>(v)));
        if (ds.empty()) continue;
        std::size_t cycle = 1;
        for (DartId d = t.rotation_next[ds.front().value()]; d != ds.front();
             d = t.rotation_next[d.value()]) {
          ++cycle;
        }
        if (cycle != ds.size()) {
          out.push_back({"rotation_cycles", "rotation at vertex is not a single cycle",
                         {t.vertex_labels[v]}});
        }
      }
    }
  }

  auto check_labels = [&](const std::vector<std::string>& labels, const char* what) {
    std::unordered_map<std::string, int> seen;
    for (const auto& l : labels) {
      if (l.empty()) out.push_back({"empty_label", std::string(what) + " label is empty", {}});
      if (++seen[l] == 2) {
        out.push_back({"duplicate_label", std::string(what) + " label is not unique", {l}});
      }
    }
  };
  check_labels(t.vertex_labels, "vertex");
  check_labels(t.edge_labels, "edge");
  return out;
}

std::size_t valency(const RibbonGraph& g, VertexId u) {
  if (!in_range(u, g.vertex_count())) throw InputError("unknown vertex id");
  return g.darts_at(u).size();
}

EdgeId turn(const RibbonGraph& g, EdgeId e, VertexId u, TurnSign s) {
  if (!in_range(e, g.edge_count())) throw InputError("unknown edge id");
  if (valency(g, u) != 3) {
    throw PreconditionError("turn at " + g.label(u) + ": vertex is not trivalent");
  }
  std::optional<DartId> at_u;
  for (DartId d : g.darts_of(e)) {
    if (g.dart(d).vertex == u) {
      if (at_u) throw PreconditionError("turn along loop " + g.label(e) + " is ambiguous");
      at_u = d;
    }
  }
  if (!at_u) throw InputError("edge " + g.label(e) + " is not incident to " + g.label(u));
  const DartId next = s == TurnSign::plus ? g.next_around(*at_u) : g.prev_around(*at_u);
  return g.dart(next).edge;
}

TurnSign turn_sign(const RibbonGraph& g, EdgeId from, EdgeId to, VertexId u) {
  if (turn(g, from, u, TurnSign::plus) == to) return TurnSign::plus;
  if (turn(g, from, u, TurnSign::minus) == to) return TurnSign::minus;
  throw PreconditionError("edges " + g.label(from) + " and " + g.label(to) +
                          " are not a turn at " + g.label(u));
}

}  // namespace orbikink
