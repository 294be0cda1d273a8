#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "orbikink/triangulation.hpp"
#include "orbikink/walk.hpp"

namespace orbikink {

struct FlipMove {
  enum class Kind { standard, double_flip };
  Kind kind = Kind::standard;
  std::string target;  // arc for a standard flip, self-folded triangle otherwise

  friend bool operator==(const FlipMove&, const FlipMove&) = default;
};

// Flipped arcs toggle a trailing prime, so flipping back restores labels.
std::string toggled_label(const std::string& arc);

// Throws NotFlippable if the move is not valid for t.
Triangulation flip(const Triangulation& t, const FlipMove& move);

// The move that undoes `move` on flip(t, move).
FlipMove inverse_move(const FlipMove& move);

// Same arcs, segments and triangles (as rotated side tuples), ignoring
// triangle names.
bool equivalent_up_to_relabeling(const Triangulation& a, const Triangulation& b);

// Carries walks on the leafy graph of t to homotopic walks on the leafy graph
// of flip(t, move). Walks may not start or end inside the flipped region.
class FlipTransport {
 public:
  FlipTransport(const Triangulation& t, FlipMove move);

  const Triangulation& source() const { return *source_; }
  const Triangulation& target() const { return *target_; }
  const LeafyDualGraph& source_graph() const { return *source_graph_; }
  const LeafyDualGraph& target_graph() const { return *target_graph_; }
  const FlipMove& move() const { return move_; }

  // Whether u is a vertex touched by the move (and so cannot be an endpoint).
  bool in_region(VertexId u) const;

  Walk transport(const Walk& w) const;
  ClosedWalkClass transport(const ClosedWalkClass& w) const;

 private:
  std::vector<std::string> standard_labels(const Walk& w, bool closed, std::string& start) const;
  std::vector<std::string> double_labels(const Walk& w) const;
  Walk to_target(const std::string& start, const std::vector<std::string>& labels) const;

  FlipMove move_;
  std::shared_ptr<const Triangulation> source_;
  std::shared_ptr<const Triangulation> target_;
  std::shared_ptr<const LeafyDualGraph> source_graph_;
  std::shared_ptr<const LeafyDualGraph> target_graph_;

  // Standard flip data.
  std::string t1_;
  std::string t2_;
  std::string diagonal_;
  std::map<std::pair<std::string, std::string>, std::string> slot_target_;
  // Double flip data.
  std::string outer_;
  std::string folded_;
  std::string loop_;
  std::string side_a_;  // edge label of the side following the loop in the outer triangle
  std::string side_b_;
};

Walk transport_walk(const Triangulation& t, const FlipMove& move, const Walk& w);

}  // namespace orbikink
