#include <doctest.h>

#include "fixtures.hpp"
#include "orbikink/document.hpp"
#include "orbikink/errors.hpp"

using namespace orbikink;

TEST_CASE("triangulation documents round trip") {
  const Triangulation t = fixtures::annulus();
  CHECK(parse_triangulation(dump_triangulation(t)) == t);
}

TEST_CASE("malformed triangulation documents") {
  CHECK_THROWS_AS(parse_triangulation("{"), ParseError);
  CHECK_THROWS_AS(parse_triangulation("[]"), ParseError);
  CHECK_THROWS_AS(parse_triangulation(R"({"arcs": [], "boundary_segments": [], "triangles": [], "x": 1})"),
                  ParseError);
  CHECK_THROWS_AS(parse_triangulation(R"({"arcs": [1], "boundary_segments": [], "triangles": []})"), ParseError);
  CHECK_THROWS_AS(
      parse_triangulation(R"({"arcs": [], "boundary_segments": [], "triangles": [{"name": "T", "sides": ["a"]}]})"),
      ParseError);
}

TEST_CASE("flip scripts") {
  const std::vector<FlipMove> moves{{FlipMove::Kind::standard, "delta"}, {FlipMove::Kind::double_flip, "v1"}};
  CHECK(parse_flip_script(dump_flip_script(moves)) == moves);
  CHECK_THROWS_AS(parse_flip_script(R"([{"kind": "sideways", "target": "x"}])"), ParseError);
}

TEST_CASE("walk text") {
  const LeafyDualGraph g = leafy_dual_graph(fixtures::annulus());
  const Walk f3 = read_walk(g.graph, fixtures::f3);
  CHECK(format_walk(g.graph, f3) == fixtures::f3);
  CHECK(read_walk(g.graph, format_walk(g.graph, f3)) == f3);

  // Backtracks are reduced on input.
  CHECK(read_walk(g.graph, "s:alpha b:alpha a:beta a:beta b:alpha") == identity_at(g.graph.vertex("s:alpha")));

  const WalkText text = parse_walk_text(g.graph, "s:alpha b:alpha a:beta");
  CHECK(text.edges.size() == 2);
  CHECK_FALSE(text.finish.has_value());

  CHECK_THROWS_AS(parse_walk_text(g.graph, "b:alpha s:alpha"), ParseError);
  CHECK_THROWS_AS(parse_walk_text(g.graph, "s:alpha t:T1 b:alpha"), ParseError);
  CHECK_THROWS_AS(parse_walk_text(g.graph, "s:alpha b:nope"), ParseError);
  CHECK_THROWS_AS(read_walk(g.graph, "s:alpha b:alpha t:T2"), InputError);
  CHECK_THROWS_AS(read_walk(g.graph, "s:alpha a:beta"), InputError);
}

TEST_CASE("kink json") {
  Kink k;
  k.j = 3;
  k.m = 8;
  k.r = 1;
  k.multiplicity = 1;
  k.triangle = "v1";
  k.eta_first = 2;
  k.eta_second = 1;
  k.core_begin = 5;
  k.core_end = 6;
  CHECK(kink_json(k) ==
        R"({"core":[5,6],"eta_order":[2,1],"j":3,"m":8,"multiplicity":1,"r":1,"triangle":"v1"})");
}
