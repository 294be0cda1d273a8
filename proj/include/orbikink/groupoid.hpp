#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <string_view>

#include "orbikink/kink.hpp"

namespace orbikink {

// c * (eta1, eta2) * c^-1 for a walk c from a basepoint u to the self-folded
// triangle v.
Walk loop_generator(const LeafyDualGraph& g, VertexId u, std::string_view v, const Walk& c);

// Equality in the 2-orbifold groupoid: normalize(h^-1 * f) is the identity.
bool orbifold_equal(const LeafyDualGraph& g, const Walk& f, const Walk& h);

// Nontrivial and self-inverse in the orbifold groupoid.
bool is_order_two(const LeafyDualGraph& g, const Walk& f);

// Kink-free representative of the orbifold class of f. Throws OrderTwoClass
// for loops of order two, where no such canonical choice exists.
Walk iota(const LeafyDualGraph& g, const Walk& f);

// Both kink-free representatives of an order-two class (the two orientations
// of the central eta pair).
std::array<Walk, 2> order_two_representatives(const LeafyDualGraph& g, const Walk& f);

// Kink-free closed class, up to orientation.
ClosedWalkClass iota_free(const LeafyDualGraph& g, const ClosedWalkClass& f);

// A walk between basepoints regarded up to the orbifold quotient. The normal
// form is computed once, on first use, and is safe to share across threads.
class OrbifoldClass {
 public:
  OrbifoldClass(std::shared_ptr<const LeafyDualGraph> g, Walk representative);

  const Walk& representative() const { return state_->rep; }
  const Walk& normal_form() const;

  // Classes with different endpoints are never equal.
  friend bool operator==(const OrbifoldClass& a, const OrbifoldClass& b);

 private:
  struct State {
    std::shared_ptr<const LeafyDualGraph> graph;
    Walk rep;
    std::once_flag once;
    Walk nf;
  };
  std::shared_ptr<State> state_;
};

}  // namespace orbikink
