#include <doctest.h>

#include "fixtures.hpp"
#include "orbikink/errors.hpp"
#include "orbikink/flip.hpp"
#include "orbikink/generators.hpp"
#include "orbikink/groupoid.hpp"

using namespace orbikink;

TEST_CASE("primes toggle") {
  CHECK(toggled_label("x") == "x'");
  CHECK(toggled_label("x'") == "x");
}

TEST_CASE("standard flip and back") {
  const Triangulation t = fixtures::annulus();
  const FlipMove move{FlipMove::Kind::standard, "delta"};
  const Triangulation s = flip(t, move);
  CHECK(validate_signature_zero(s).empty());
  CHECK_FALSE(equivalent_up_to_relabeling(s, t));
  CHECK(equivalent_up_to_relabeling(flip(s, inverse_move(move)), t));
  CHECK(summarize(s).boundary_marked == summarize(t).boundary_marked);
}

TEST_CASE("double flip and back") {
  const Triangulation t = fixtures::annulus();
  const FlipMove move{FlipMove::Kind::double_flip, "v1"};
  const Triangulation s = flip(t, move);
  CHECK(validate_signature_zero(s).empty());
  CHECK(equivalent_up_to_relabeling(flip(s, inverse_move(move)), t));
}

TEST_CASE("invalid moves") {
  const Triangulation t = fixtures::annulus();
  // Radii and loops of self-folded triangles cannot be flipped on their own.
  CHECK_THROWS_AS(flip(t, {FlipMove::Kind::standard, "r1"}), NotFlippable);
  CHECK_THROWS_AS(flip(t, {FlipMove::Kind::standard, "lambda"}), NotFlippable);
  CHECK_THROWS_AS(flip(t, {FlipMove::Kind::standard, "nope"}), NotFlippable);
  CHECK_THROWS_AS(flip(t, {FlipMove::Kind::double_flip, "T1"}), NotFlippable);
}

TEST_CASE("transport keeps kinks and orbifold classes") {
  const Triangulation t = fixtures::annulus();
  const FlipMove move{FlipMove::Kind::standard, "delta"};
  const FlipTransport fwd(t, move);
  const FlipTransport back(fwd.target(), inverse_move(move));
  const LeafyDualGraph& g = fwd.source_graph();
  const LeafyDualGraph& h = fwd.target_graph();
  for (const char* text : {fixtures::f1, fixtures::f2, fixtures::f3, fixtures::f4}) {
    const Walk w = read_walk(g.graph, text);
    const Walk tw = fwd.transport(w);
    CHECK(back.transport(tw) == w);
    CHECK(find_kinks(g, w).empty() == find_kinks(h, tw).empty());
  }
  CHECK(orbifold_equal(h, fwd.transport(read_walk(g.graph, fixtures::f3)),
                       fwd.transport(read_walk(g.graph, fixtures::f1))));
}

TEST_CASE("random moves round trip") {
  Rng rng(13);
  int moves = 0;
  for (int i = 0; i < 40; ++i) {
    const Triangulation t = random_triangulation(rng);
    const auto move = random_move(t, rng);
    if (!move) continue;
    ++moves;
    const FlipTransport fwd(t, *move);
    const FlipTransport back(fwd.target(), inverse_move(*move));
    CHECK(validate_signature_zero(fwd.target()).empty());
    const LeafyDualGraph& g = fwd.source_graph();
    std::vector<VertexId> ends;
    for (VertexId b : g.basepoints()) {
      if (!fwd.in_region(b)) ends.push_back(b);
    }
    if (ends.empty()) continue;
    for (int k = 0; k < 10; ++k) {
      const Walk w = random_walk(g, rng, ends[rng() % ends.size()], ends, {60, 0.3});
      CHECK(back.transport(fwd.transport(w)) == w);
    }
  }
  CHECK(moves > 20);
}
