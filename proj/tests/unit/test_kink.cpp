#include <doctest.h>

#include <algorithm>
#include <tuple>

#include "bruteforce.hpp"
#include "fixtures.hpp"
#include "orbikink/errors.hpp"
#include "orbikink/generators.hpp"
#include "orbikink/kink.hpp"

using namespace orbikink;

namespace {

using Key = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;

std::vector<Key> keys(const std::vector<Kink>& ks) {
  std::vector<Key> out;
  for (const Kink& k : ks) out.emplace_back(k.j, k.m, k.r, k.multiplicity);
  std::ranges::sort(out);
  return out;
}

std::vector<Key> keys(const std::vector<oracle::Found>& ks) {
  std::vector<Key> out;
  for (const auto& k : ks) out.emplace_back(k.j, k.m, k.r, k.multiplicity);
  std::ranges::sort(out);
  return out;
}

}  // namespace

TEST_CASE("kinks of the annulus walks") {
  const LeafyDualGraph g = leafy_dual_graph(fixtures::annulus());
  CHECK(find_kinks(g, read_walk(g.graph, fixtures::f1)).empty());
  CHECK(find_kinks(g, read_walk(g.graph, fixtures::f2)).empty());

  const auto k3 = find_kinks(g, read_walk(g.graph, fixtures::f3));
  REQUIRE(k3.size() == 1);
  CHECK(k3[0].multiplicity == 2);
  CHECK(k3[0].j == 4);
  CHECK(k3[0].m == 9);
  CHECK(k3[0].r == 1);
  CHECK(k3[0].triangle == "v1");

  const auto k4 = find_kinks(g, read_walk(g.graph, fixtures::f4));
  REQUIRE(k4.size() == 1);
  CHECK(k4[0].multiplicity == 1);
  CHECK(k4[0].j == 3);
  CHECK(k4[0].m == 8);
  CHECK(k4[0].r == 1);
  CHECK(k4[0].core_begin == 5);
  CHECK(k4[0].core_end == 6);
}

TEST_CASE("kink finder matches a literal scan") {
  Rng rng(21);
  std::size_t with_kinks = 0;
  for (int t = 0; t < 20; ++t) {
    const LeafyDualGraph g = leafy_dual_graph(random_triangulation(rng));
    const auto bases = g.basepoints();
    for (int i = 0; i < 50; ++i) {
      const Walk w = random_walk(g, rng, bases[rng() % bases.size()], bases, {60, 0.35});
      const auto ours = find_kinks(g, w);
      CHECK(keys(ours) == keys(oracle::kinks(g, w.start, w.edges)));
      with_kinks += !ours.empty();
    }
  }
  CHECK(with_kinks > 100);
}

TEST_CASE("normalizing the annulus walks") {
  const LeafyDualGraph g = leafy_dual_graph(fixtures::annulus());
  const Walk f1 = read_walk(g.graph, fixtures::f1);
  const Walk f2 = read_walk(g.graph, fixtures::f2);
  const Walk f3 = read_walk(g.graph, fixtures::f3);
  const Walk f4 = read_walk(g.graph, fixtures::f4);
  CHECK(normalize(g, f4) == f2);
  CHECK(normalize(g, f3) == f1);
  CHECK(oracle::all_normal_forms(g, f4.start, f4.edges) == std::set{f2.edges});
  CHECK(oracle::all_normal_forms(g, f3.start, f3.edges) == std::set{f1.edges});

  std::vector<StepRecord> steps;
  normalize(g, f3, {}, [&](const StepRecord& s) { steps.push_back(s); });
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].kink.multiplicity == 2);
  CHECK(steps[0].length_before - steps[0].length_after == 6);
}

TEST_CASE("every resolution order ends in the same walk") {
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    const LeafyDualGraph g = leafy_dual_graph(random_triangulation(rng));
    const auto bases = g.basepoints();
    for (int i = 0; i < 20; ++i) {
      const Walk w = random_walk(g, rng, bases[rng() % bases.size()], bases, {24, 0.35});
      const auto all = oracle::all_normal_forms(g, w.start, w.edges);
      const Walk nf = normalize(g, w);
      CHECK(all.contains(nf.edges));
      if (all.size() > 1) {
        // Only order-two classes have several kink-free forms.
        CHECK(nf.is_loop());
        CHECK(all.size() == 2);
      }
    }
  }
}

TEST_CASE("a resolution can leave the total multiplicity unchanged") {
  // Resolving the first kink creates a new one further right whose flanks
  // are eta edges of the first puncture.
  const LeafyDualGraph g = leafy_dual_graph(fixtures::two_punctures());
  const Walk f = read_walk(g.graph,
                           "s:s1 b:s1 a:x1 eta2:V1 eta1:V1 a:x1 a:x2 eta2:V2 eta1:V2 a:x2 a:x1 eta1:V1 eta2:V1 a:x1 "
                           "b:s1 s:s1");
  const auto before = find_kinks(g, f);
  CHECK(keys(before) == std::vector<Key>{{1, 6, 1, 1}, {9, 14, 1, 1}});
  const Walk after = resolve_kink(g, f, before[0]);
  CHECK(after.length() == f.length());
  CHECK(keys(find_kinks(g, after)) == std::vector<Key>{{4, 11, 2, 1}, {9, 14, 1, 1}});
  CHECK(keys(oracle::kinks(g, after.start, after.edges)) == keys(find_kinks(g, after)));
  // Normalization still terminates.
  CHECK(find_kinks(g, normalize(g, f)).empty());
}

TEST_CASE("skipping the sign condition finds extra kinks") {
  const LeafyDualGraph g = leafy_dual_graph(fixtures::annulus());
  const Walk f2 = read_walk(g.graph, fixtures::f2);
  CHECK(find_kinks(g, f2).empty());
  CHECK_FALSE(find_kinks(g, f2, {.skip_sign_condition = true}).empty());
}

TEST_CASE("closed walks") {
  const LeafyDualGraph g = leafy_dual_graph(fixtures::two_punctures());
  const auto cls = [&](const char* text) { return canonical_closed(g.graph, read_walk(g.graph, text)); };

  SUBCASE("powers of a puncture loop") {
    const auto once = cls("t:V1 eta1:V1 eta2:V1 t:V1");
    CHECK(normalize(g, cls("t:V1 eta1:V1 eta2:V1 eta1:V1 eta2:V1 eta1:V1 eta2:V1 t:V1")) == once);
    CHECK_THROWS_AS(normalize(g, cls("t:V1 eta1:V1 eta2:V1 eta1:V1 eta2:V1 t:V1")), Contractible);
  }
  SUBCASE("kink wrapping around the end") {
    const auto c = cls("t:T1 a:x1 eta1:V1 eta2:V1 eta1:V1 eta2:V1 a:x1 a:x2 eta1:V2 eta2:V2 a:x2 t:T1");
    const auto ks = find_kinks(g, c);
    REQUIRE(ks.size() == 1);
    CHECK(ks[0].multiplicity == 2);
    // The x2 flanks cancel cyclically, leaving the V2 loop.
    CHECK(normalize(g, c) == cls("t:V2 eta1:V2 eta2:V2 t:V2"));
  }
}

TEST_CASE("open walks must end at regular vertices") {
  const LeafyDualGraph g = leafy_dual_graph(fixtures::two_punctures());
  CHECK_THROWS_AS(find_kinks(g, read_walk(g.graph, "s:s1 b:s1 a:x1 t:V1")), InputError);
}

TEST_CASE("key lemma instances") {
  Rng rng(4);
  int checked = 0;
  for (int t = 0; t < 20; ++t) {
    const LeafyDualGraph g = leafy_dual_graph(random_triangulation(rng));
    const auto inst = random_key_lemma_instance(g, rng, {40, 0.4});
    if (!inst) continue;
    const KeyLemmaReport report = check_key_lemma(g, inst->f, inst->h);
    CHECK_MESSAGE(report.passed, report.failure);
    ++checked;
  }
  CHECK(checked >= 10);
}
