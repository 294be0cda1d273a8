#include <doctest.h>

#include "fixtures.hpp"
#include "orbikink/errors.hpp"
#include "orbikink/generators.hpp"
#include "orbikink/groupoid.hpp"

using namespace orbikink;

TEST_CASE("orbifold equality on the annulus") {
  const LeafyDualGraph g = leafy_dual_graph(fixtures::annulus());
  const Walk f1 = read_walk(g.graph, fixtures::f1);
  const Walk f2 = read_walk(g.graph, fixtures::f2);
  const Walk f3 = read_walk(g.graph, fixtures::f3);
  const Walk f4 = read_walk(g.graph, fixtures::f4);
  CHECK(orbifold_equal(g, f3, f1));
  CHECK(orbifold_equal(g, f4, f2));
  CHECK_FALSE(orbifold_equal(g, f1, f2));
  CHECK(iota(g, f3) == f1);
  CHECK(iota(g, f4) == f2);
}

TEST_CASE("generators have order two") {
  const LeafyDualGraph g = leafy_dual_graph(fixtures::annulus());
  const VertexId u = g.graph.vertex("s:alpha");
  const Walk c = read_walk(g.graph, "s:alpha b:alpha a:beta a:gamma a:lambda t:v1");
  const Walk gen = loop_generator(g, u, "v1", c);
  CHECK(gen.length() == 2 * c.length() + 2);
  CHECK(is_order_two(g, gen));
  CHECK(normalize(g, compose(gen, gen)).is_identity());
  CHECK_THROWS_AS(iota(g, gen), OrderTwoClass);

  const auto reps = order_two_representatives(g, gen);
  CHECK(reps[0] != reps[1]);
  CHECK(find_kinks(g, reps[0]).empty());
  CHECK(find_kinks(g, reps[1]).empty());
  CHECK(orbifold_equal(g, reps[0], reps[1]));
}

TEST_CASE("iota is a section") {
  Rng rng(17);
  for (int t = 0; t < 10; ++t) {
    const LeafyDualGraph g = leafy_dual_graph(random_triangulation(rng));
    const auto bases = g.basepoints();
    for (int i = 0; i < 20; ++i) {
      const Walk f = random_walk(g, rng, bases[rng() % bases.size()], bases, {80, 0.3});
      if (f.is_loop() && is_order_two(g, f)) continue;
      const Walk r = iota(g, f);
      CHECK(find_kinks(g, r).empty());
      CHECK(orbifold_equal(g, r, f));
      CHECK(iota(g, r) == r);
    }
  }
}

TEST_CASE("kink-free forms are not unique at triangle endpoints") {
  // Both orientations of the loop around V1 are kink-free here, since the
  // walk stops right after the second loop-dual edge.
  const LeafyDualGraph g = leafy_dual_graph(fixtures::two_punctures());
  const Walk a = read_walk(g.graph, "s:s1 b:s1 a:x1 eta1:V1 eta2:V1 a:x1 t:T1");
  const Walk b = read_walk(g.graph, "s:s1 b:s1 a:x1 eta2:V1 eta1:V1 a:x1 t:T1");
  CHECK(find_kinks(g, a).empty());
  CHECK(find_kinks(g, b).empty());
  CHECK(normalize(g, compose(a, invert(b))).is_identity());
}

TEST_CASE("orbifold classes compare by normal form") {
  auto g = std::make_shared<const LeafyDualGraph>(leafy_dual_graph(fixtures::annulus()));
  const OrbifoldClass c1(g, read_walk(g->graph, fixtures::f1));
  const OrbifoldClass c3(g, read_walk(g->graph, fixtures::f3));
  const OrbifoldClass c2(g, read_walk(g->graph, fixtures::f2));
  CHECK(c1 == c3);
  CHECK_FALSE(c1 == c2);
  CHECK(c3.normal_form() == c1.representative());
}

TEST_CASE("free classes") {
  const LeafyDualGraph g = leafy_dual_graph(fixtures::two_punctures());
  const auto c = canonical_closed(
      g.graph, read_walk(g.graph, "t:T1 a:x1 eta2:V1 eta1:V1 a:x1 a:x2 eta1:V2 eta2:V2 eta1:V2 eta2:V2 eta1:V2 "
                                  "eta2:V2 a:x2 t:T1"));
  const auto r = iota_free(g, c);
  CHECK(find_kinks(g, r).empty());
  CHECK(iota_free(g, r) == r);
}
