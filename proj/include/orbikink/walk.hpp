#pragma once

#include <span>
#include <string>
#include <vector>

#include "orbikink/ribbon_graph.hpp"

namespace orbikink {

// An edge walk. An empty edge list is the identity at start (then
// finish == start). Interior vertices are not stored; in a loop-free graph
// they follow from start and the edges.
struct Walk {
  VertexId start;
  VertexId finish;
  std::vector<EdgeId> edges;

  std::size_t length() const { return edges.size(); }
  bool is_identity() const { return edges.empty(); }
  bool is_loop() const { return start == finish; }

  friend bool operator==(const Walk&, const Walk&) = default;
};

Walk identity_at(VertexId u);

// u_0, ..., u_n. Throws InputError if the word is not edge-consecutive.
std::vector<VertexId> vertex_sequence(const RibbonGraph& g, VertexId start, std::span<const EdgeId> word);
std::vector<VertexId> vertex_sequence(const RibbonGraph& g, const Walk& w);

bool is_backtrack_free(const Walk& w);

// Free reduction of an edge-consecutive word starting at `start`.
Walk standard_form(const RibbonGraph& g, VertexId start, std::span<const EdgeId> word);

// Standard form of f followed by h. Inputs must be in standard form.
Walk compose(const Walk& f, const Walk& h);
Walk invert(const Walk& f);

// Open walks: n-1 signs. Walks of length <= 1 give the empty sequence.
std::vector<TurnSign> sign_sequence(const RibbonGraph& g, const Walk& f);
// Closed walks: n signs, the last one turning from e_n back into e_1.
std::vector<TurnSign> closed_sign_sequence(const RibbonGraph& g, const Walk& f);
std::string sign_string(std::span<const TurnSign> signs);

// Rotation of a closed walk so that it begins with edge k (0-based).
Walk rotate(const RibbonGraph& g, const Walk& closed, std::size_t k);

// Strips matching first/last edges until e_1 != e_n. May return an identity.
Walk cyclic_reduce(const RibbonGraph& g, const Walk& closed);

// Rotation class of a closed backtrack-free walk with e_1 != e_n. The stored
// representative is the rotation with the least (edge ids, start) key.
class ClosedWalkClass {
 public:
  const Walk& representative() const { return rep_; }
  std::size_t length() const { return rep_.edges.size(); }

  friend bool operator==(const ClosedWalkClass&, const ClosedWalkClass&) = default;
  friend auto operator<=>(const ClosedWalkClass& a, const ClosedWalkClass& b) {
    if (auto c = a.rep_.edges <=> b.rep_.edges; c != 0) return c;
    return a.rep_.start <=> b.rep_.start;
  }

 private:
  friend ClosedWalkClass canonical_closed(const RibbonGraph& g, const Walk& f);
  Walk rep_;
};

// Throws Contractible when the cyclic reduction of f is empty.
ClosedWalkClass canonical_closed(const RibbonGraph& g, const Walk& f);
ClosedWalkClass reversed(const RibbonGraph& g, const ClosedWalkClass& c);
// Least of the class and its reversal.
ClosedWalkClass unoriented(const RibbonGraph& g, const ClosedWalkClass& c);

}  // namespace orbikink
