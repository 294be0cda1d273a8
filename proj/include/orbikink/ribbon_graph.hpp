#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "orbikink/ids.hpp"

namespace orbikink {

struct Dart {
  VertexId vertex;
  EdgeId edge;
};

struct Diagnostic {
  std::string code;
  std::string message;
  std::vector<std::string> subjects;
};

enum class TurnSign : signed char { minus = -1, plus = 1 };

constexpr TurnSign operator-(TurnSign s) {
  return s == TurnSign::plus ? TurnSign::minus : TurnSign::plus;
}

constexpr char to_char(TurnSign s) { return s == TurnSign::plus ? '+' : '-'; }

/// A graph together with a rotation system: for every vertex a cyclic
/// (clockwise) order of the darts attached to it.
///
/// Darts are the primitive objects. Each edge is a pair of darts exchanged by
/// the edge involution, and the rotation is stored as the permutation sending
/// a dart to its clockwise successor around the same vertex. Values are
/// immutable once built.
class RibbonGraph {
 public:
  // Unchecked table form; anything can be expressed here, including graphs
  // that violate the invariants (see validate()).
  struct Tables {
    std::vector<std::string> vertex_labels;
    std::vector<std::string> edge_labels;
    std::vector<Dart> darts;
    std::vector<DartId> involution;
    std::vector<DartId> rotation_next;
  };

  class Builder;

  RibbonGraph() = default;

  // Wraps the tables without checking them. Use validate() before calling
  // anything else on a graph obtained this way.
  static RibbonGraph from_tables(Tables tables);

  std::size_t vertex_count() const { return tables_.vertex_labels.size(); }
  std::size_t edge_count() const { return tables_.edge_labels.size(); }
  std::size_t dart_count() const { return tables_.darts.size(); }

  const Tables& tables() const { return tables_; }

  const Dart& dart(DartId d) const { return tables_.darts[d.value()]; }
  DartId opposite(DartId d) const { return tables_.involution[d.value()]; }
  DartId next_around(DartId d) const { return tables_.rotation_next[d.value()]; }
  DartId prev_around(DartId d) const { return rotation_prev_[d.value()]; }

  // Darts at u in clockwise order, starting from the lowest dart id.
  std::span<const DartId> darts_at(VertexId u) const { return vertex_darts_[u.value()]; }
  std::span<const DartId> darts_of(EdgeId e) const { return edge_darts_[e.value()]; }

  bool incident(EdgeId e, VertexId u) const;
  // The endpoint of e other than u; throws InputError if e is not at u.
  VertexId other_end(EdgeId e, VertexId u) const;
  std::array<VertexId, 2> endpoints(EdgeId e) const;

  const std::string& label(VertexId u) const { return tables_.vertex_labels[u.value()]; }
  const std::string& label(EdgeId e) const { return tables_.edge_labels[e.value()]; }

  std::optional<VertexId> find_vertex(std::string_view label) const;
  std::optional<EdgeId> find_edge(std::string_view label) const;
  // Lookups that throw InputError naming the unknown label.
  VertexId vertex(std::string_view label) const;
  EdgeId edge(std::string_view label) const;

 private:
  Tables tables_;
  std::vector<DartId> rotation_prev_;
  std::vector<std::vector<DartId>> vertex_darts_;
  std::vector<std::vector<DartId>> edge_darts_;
  std::unordered_map<std::string, VertexId> vertex_by_label_;
  std::unordered_map<std::string, EdgeId> edge_by_label_;
};

class RibbonGraph::Builder {
 public:
  VertexId add_vertex(std::string label);
  // Adds an edge from u to v and returns it; the first dart sits at u.
  EdgeId add_edge(std::string label, VertexId u, VertexId v);
  // Clockwise order of darts around u. Every dart at u must appear once.
  void set_rotation(VertexId u, std::vector<DartId> clockwise);
  // Convenience for vertices without loops: the order is given by edges.
  void set_rotation_by_edges(VertexId u, std::span<const EdgeId> clockwise);

  DartId dart_at(EdgeId e, VertexId u) const;

  // Vertices whose rotation was never set keep the order in which their darts
  // were created. Throws InputError if the result fails validate() (loops are
  // accepted when allow_loops is set).
  RibbonGraph build(bool allow_loops = false) &&;

 private:
  RibbonGraph::Tables tables_;
  std::vector<std::vector<DartId>> rotations_;
};

std::vector<Diagnostic> validate(const RibbonGraph& g, bool allow_loops = false);

std::size_t valency(const RibbonGraph& g, VertexId u);

/// e^{+,u} for s = plus (the edge that e precedes clockwise around u) and
/// e^{-,u} for s = minus (the edge that e follows).
EdgeId turn(const RibbonGraph& g, EdgeId e, VertexId u, TurnSign s);

// The sign s with turn(g, from, u, s) == to.
TurnSign turn_sign(const RibbonGraph& g, EdgeId from, EdgeId to, VertexId u);

}  // namespace orbikink
