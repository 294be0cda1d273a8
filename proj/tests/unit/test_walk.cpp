#include <doctest.h>

#include <random>

#include "bruteforce.hpp"
#include "fixtures.hpp"
#include "orbikink/errors.hpp"
#include "orbikink/generators.hpp"
#include "orbikink/walk.hpp"

using namespace orbikink;

namespace {

// Random edge-consecutive word with plenty of backtracking.
std::vector<EdgeId> random_word(const RibbonGraph& g, std::mt19937_64& rng, VertexId start, std::size_t n) {
  std::vector<EdgeId> w;
  VertexId at = start;
  for (std::size_t i = 0; i < n; ++i) {
    const auto darts = g.darts_at(at);
    const EdgeId e = g.dart(darts[rng() % darts.size()]).edge;
    w.push_back(e);
    at = g.other_end(e, at);
  }
  return w;
}

}  // namespace

TEST_CASE("standard form agrees with every deletion order") {
  const LeafyDualGraph g = leafy_dual_graph(fixtures::two_punctures());
  std::mt19937_64 rng(5);
  const VertexId s1 = g.graph.vertex("s:s1");
  for (int i = 0; i < 300; ++i) {
    const auto word = random_word(g.graph, rng, s1, rng() % 13);
    const auto all = oracle::free_reductions(word);
    REQUIRE(all.size() == 1);
    const Walk w = standard_form(g.graph, s1, word);
    CHECK(w.edges == *all.begin());
    CHECK(is_backtrack_free(w));
    CHECK(w.finish == oracle::vertices(g.graph, s1, word).back());
  }
}

TEST_CASE("powers of a loop in the three-edge graph") {
  RibbonGraph::Builder b;
  const VertexId u0 = b.add_vertex("u0");
  const VertexId x = b.add_vertex("x");
  const VertexId y = b.add_vertex("y");
  const EdgeId alpha = b.add_edge("alpha", u0, x);
  const EdgeId eta1 = b.add_edge("eta1", x, y);
  const EdgeId eta2 = b.add_edge("eta2", x, y);
  const RibbonGraph g = std::move(b).build();

  const Walk f = standard_form(g, u0, std::vector{alpha, eta1, eta2, alpha});
  const Walk f_inv = invert(f);
  CHECK(f_inv.edges == std::vector{alpha, eta2, eta1, alpha});
  Walk pos = identity_at(u0);
  Walk neg = identity_at(u0);
  for (std::size_t n = 1; n <= 10; ++n) {
    pos = compose(pos, f);
    neg = compose(neg, f_inv);
    REQUIRE(pos.length() == 2 * n + 2);
    REQUIRE(neg.length() == 2 * n + 2);
    for (std::size_t i = 0; i < 2 * n; ++i) {
      CHECK(pos.edges[i + 1] == (i % 2 == 0 ? eta1 : eta2));
      CHECK(neg.edges[i + 1] == (i % 2 == 0 ? eta2 : eta1));
    }
  }
  CHECK(compose(pos, invert(pos)).is_identity());
}

TEST_CASE("compose and invert") {
  const LeafyDualGraph g = leafy_dual_graph(fixtures::annulus());
  Rng rng(9);
  const auto bases = g.basepoints();
  for (int i = 0; i < 100; ++i) {
    const Walk a = random_walk(g, rng, bases[rng() % bases.size()], bases, {30, 0.3});
    const Walk b = random_walk(g, rng, a.finish, bases, {30, 0.3});
    const Walk c = random_walk(g, rng, b.finish, bases, {30, 0.3});
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    CHECK(invert(invert(a)) == a);
    CHECK(compose(a, invert(a)).is_identity());
    CHECK(invert(compose(a, b)) == compose(invert(b), invert(a)));
  }
}

TEST_CASE("sign sequences of the annulus walks") {
  const LeafyDualGraph g = leafy_dual_graph(fixtures::annulus());
  const Walk f1 = read_walk(g.graph, fixtures::f1);
  CHECK(sign_string(sign_sequence(g.graph, f1)) == "+----+");
  CHECK(sign_string(sign_sequence(g.graph, read_walk(g.graph, fixtures::f2))) == "+-++-++--+");
  CHECK(sign_string(sign_sequence(g.graph, read_walk(g.graph, fixtures::f3))) == "+-++---++--+");
  CHECK(sign_string(sign_sequence(g.graph, read_walk(g.graph, fixtures::f4))) == "+-+-+-+--+");
  for (const char* text : {fixtures::f1, fixtures::f2, fixtures::f3, fixtures::f4}) {
    const Walk w = read_walk(g.graph, text);
    CHECK(sign_string(sign_sequence(g.graph, w)) == oracle::signs(g.graph, w.start, w.edges));
  }
}

TEST_CASE("closed walks") {
  const LeafyDualGraph g = leafy_dual_graph(fixtures::two_punctures());
  const Walk loop = read_walk(g.graph, "t:T1 a:x1 eta1:V1 eta2:V1 a:x1 a:x2 eta2:V2 eta1:V2 a:x2 t:T1");
  const ClosedWalkClass c = canonical_closed(g.graph, loop);
  for (std::size_t k = 0; k < loop.length(); ++k) CHECK(canonical_closed(g.graph, rotate(g.graph, loop, k)) == c);
  CHECK(closed_sign_sequence(g.graph, loop).size() == loop.length());
  CHECK(unoriented(g.graph, c) == unoriented(g.graph, reversed(g.graph, c)));
  CHECK(reversed(g.graph, reversed(g.graph, c)) == c);

  const Walk spur = read_walk(g.graph, "s:s1 b:s1 a:x1 eta1:V1 eta2:V1 a:x1 b:s1 s:s1");
  CHECK(canonical_closed(g.graph, spur).length() == 2);
  const Walk back = read_walk(g.graph, "t:T1 a:x1 a:x1 t:T1");
  CHECK(back.is_identity());
  CHECK_THROWS_AS(canonical_closed(g.graph, identity_at(back.start)), Contractible);
}

TEST_CASE("non-consecutive words are rejected") {
  const LeafyDualGraph g = leafy_dual_graph(fixtures::two_punctures());
  const VertexId s1 = g.graph.vertex("s:s1");
  CHECK_THROWS_AS(vertex_sequence(g.graph, s1, std::vector{g.graph.edge("a:x1")}), InputError);
}
