#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "orbikink/errors.hpp"
#include "orbikink/generators.hpp"
#include "orbikink/triangulation.hpp"

using namespace orbikink;

namespace {

bool has_code(const std::vector<Diagnostic>& diags, std::string_view code) {
  return std::ranges::any_of(diags, [&](const Diagnostic& d) { return d.code == code; });
}

}  // namespace

TEST_CASE("annulus is a valid signature-zero triangulation") {
  const Triangulation t = fixtures::annulus();
  CHECK(validate_signature_zero(t).empty());
  const SurfaceSummary s = summarize(t);
  CHECK(s.punctures == 3);
  CHECK(s.boundary_marked == std::vector<int>{1, 3});
  CHECK(s.euler_characteristic == 0);
  CHECK(s.genus == 0);
}

TEST_CASE("leafy dual graph of the annulus") {
  const LeafyDualGraph g = leafy_dual_graph(fixtures::annulus());
  // 7 ordinary + 3 folded triangles, 4 segments, plus w and z per puncture.
  CHECK(g.graph.vertex_count() == 7 + 3 + 4 + 3 * 2);
  CHECK(validate(g.graph).empty());
  CHECK(g.clusters.size() == 3);
  CHECK(g.basepoints().size() == 4);

  const SelfFoldedCluster& c = g.cluster("v1");
  CHECK(g.graph.label(c.eta1) == "eta1:v1");
  CHECK(g.graph.label(c.leaf) == "leaf:v1");
  // Rotation at w_v is (eta2, eta1, leaf).
  CHECK(turn(g.graph, c.eta2, c.w, TurnSign::plus) == c.eta1);
  CHECK(turn(g.graph, c.eta1, c.w, TurnSign::plus) == c.leaf);
  // Rotation at v is (loop dual, eta1, eta2).
  CHECK(turn(g.graph, c.loop_dual, c.v, TurnSign::plus) == c.eta1);
  CHECK(turn(g.graph, c.eta1, c.v, TurnSign::plus) == c.eta2);

  for (std::uint32_t u = 0; u < g.graph.vertex_count(); ++u) {
    const VertexInfo& info = g.info(VertexId(u));
    const std::size_t deg = valency(g.graph, VertexId(u));
    if (info.kind == VertexKind::segment || info.kind == VertexKind::z) CHECK(deg == 1);
    else CHECK(deg == 3);
  }
}

TEST_CASE("collapsing the leaves gives back the dual graph") {
  const Triangulation t = fixtures::annulus();
  CHECK(same_labeled_graph(collapse_leaves(leafy_dual_graph(t)).graph, dual_graph(t).graph));

  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const Triangulation r = random_triangulation(rng);
    CHECK(same_labeled_graph(collapse_leaves(leafy_dual_graph(r)).graph, dual_graph(r).graph));
  }
}

TEST_CASE("validation diagnostics") {
  Triangulation t = fixtures::annulus();

  SUBCASE("arc used three times") {
    t.triangles[2].sides[1] = Side{"beta", false};
    CHECK(has_code(validate_signature_zero(t), "arc_count"));
    CHECK_THROWS_AS(leafy_dual_graph(t), InputError);
  }
  SUBCASE("unknown side") {
    t.triangles[0].sides[1] = Side{"nope", false};
    CHECK(has_code(validate_signature_zero(t), "unknown_side"));
  }
  SUBCASE("no boundary") {
    t.boundary_segments.clear();
    CHECK(has_code(validate_signature_zero(t), "no_boundary"));
  }
  SUBCASE("duplicate triangle names") {
    t.triangles[1].name = "T1";
    CHECK(has_code(validate_signature_zero(t), "duplicate_label"));
  }
}

TEST_CASE("a puncture without a self-folded triangle breaks signature zero") {
  // Once-punctured monogon split into two triangles by two radii: the
  // puncture is a vertex of both triangles.
  const Triangulation t = parse_triangulation(R"({
    "arcs": ["p", "q", "x"],
    "boundary_segments": ["s1"],
    "triangles": [
      {"name": "T1", "sides": ["x", "p", "q"]},
      {"name": "T2", "sides": ["q", "p", "bd:s1"]}
    ]})");
  CHECK_FALSE(validate_signature_zero(t).empty());
}

TEST_CASE("random triangulations are valid") {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const Triangulation t = random_triangulation(rng);
    CHECK(validate_signature_zero(t).empty());
    CHECK(t.triangles.size() <= 12);
    const SurfaceSummary s = summarize(t);
    CHECK(s.punctures <= 4);
    CHECK(std::ranges::count_if(t.triangles, [](const Triangle& x) { return x.self_folded; }) == s.punctures);
  }
}
