#include <doctest.h>

#include <algorithm>

#include "orbikink/document.hpp"
#include "orbikink/generators.hpp"
#include "orbikink/selftest.hpp"

using namespace orbikink;

TEST_CASE("same seed, same triangulations and walks") {
  Rng a(99);
  Rng b(99);
  for (int i = 0; i < 10; ++i) {
    const Triangulation ta = random_triangulation(a);
    const Triangulation tb = random_triangulation(b);
    REQUIRE(ta == tb);
    const LeafyDualGraph g = leafy_dual_graph(ta);
    const auto bases = g.basepoints();
    CHECK(random_walk(g, a, bases[0], bases) == random_walk(g, b, bases[0], bases));
  }
}

TEST_CASE("random walks respect their parameters") {
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const LeafyDualGraph g = leafy_dual_graph(random_triangulation(rng));
    const auto bases = g.basepoints();
    for (int k = 0; k < 20; ++k) {
      const Walk w = random_walk(g, rng, bases[rng() % bases.size()], bases, {50, 0.3});
      CHECK(w.length() <= 50);
      CHECK(is_backtrack_free(w));
      CHECK(g.is_basepoint(w.finish));
      CHECK(std::ranges::none_of(w.edges, [&](EdgeId e) { return g.info(e).kind == EdgeKind::leaf; }));
    }
  }
}

TEST_CASE("conjugated squares are trivial") {
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    const LeafyDualGraph g = leafy_dual_graph(random_triangulation(rng));
    if (g.clusters.empty()) continue;
    const Walk sq = conjugated_square(g, rng, g.basepoints()[0]);
    CHECK(normalize(g, sq).is_identity());
  }
}

TEST_CASE("selftest suites at small size") {
  SelftestConfig cfg;
  cfg.seed = 5;
  cfg.jobs = 2;
  for (const SuiteResult& r : run_selftest(cfg, 20)) {
    if (r.name == "strict-decrease") continue;  // known to have violations, see the kink tests
    CHECK_MESSAGE(r.passed(), r.name, " ", r.counterexample.value_or(""));
  }
  CHECK(run_selftest(cfg, 0).empty());
}

TEST_CASE("fault injection is detected") {
  SelftestConfig cfg;
  cfg.seed = 5;
  cfg.kink.skip_sign_condition = true;
  const auto results = confluence_suite(cfg, 200, 10);
  CHECK_FALSE(results[0].passed());
}
