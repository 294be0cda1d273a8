#include "orbikink/generators.hpp"

#include <algorithm>
#include <deque>

#include "orbikink/errors.hpp"
#include "orbikink/groupoid.hpp"
#include "orbikink/kink.hpp"

namespace orbikink {

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[uniform(rng, 0, v.size() - 1)];
}

struct Proto {
  std::string name;
  std::array<std::optional<Side>, 3> sides;
  bool folded = false;
  std::string loop;
  std::string radius;
};

struct Slot {
  std::size_t tri;
  std::size_t pos;
};

std::optional<Triangulation> try_build(Rng& rng, const TriangulationParams& params, bool allow_gluing) {
  const std::size_t target = uniform(rng, 2, static_cast<std::size_t>(std::max(2, params.max_triangles)));
  std::vector<Proto> protos(1);
  protos[0].name = "T1";
  std::vector<Slot> free = {{0, 0}, {0, 1}, {0, 2}};
  int ordinary = 1;
  int punctures = 0;
  int arcs = 0;
  Triangulation t;

  auto take_slot = [&] {
    const std::size_t i = uniform(rng, 0, free.size() - 1);
    const Slot s = free[i];
    free.erase(free.begin() + static_cast<std::ptrdiff_t>(i));
    return s;
  };
  auto new_arc = [&] {
    std::string a = "x" + std::to_string(++arcs);
    t.arcs.push_back(a);
    return a;
  };

  while (protos.size() < target) {
    const double roll = std::uniform_real_distribution<double>(0, 1)(rng);
    if (roll < 0.3 && punctures < params.max_punctures && free.size() >= 2) {
      const Slot s = take_slot();
      Proto v;
      ++punctures;
      v.name = "V" + std::to_string(punctures);
      v.folded = true;
      v.loop = new_arc();
      v.radius = "r" + std::to_string(punctures);
      t.arcs.push_back(v.radius);
      protos[s.tri].sides[s.pos] = Side{v.loop, false};
      protos.push_back(v);
    } else if (roll < 0.42 && allow_gluing && free.size() >= 3) {
      const Slot a = take_slot();
      std::vector<std::size_t> others;
      for (std::size_t i = 0; i < free.size(); ++i) {
        if (free[i].tri != a.tri) others.push_back(i);
      }
      if (others.empty()) {
        free.push_back(a);
        continue;
      }
      const std::size_t bi = pick(rng, others);
      const Slot b = free[bi];
      free.erase(free.begin() + static_cast<std::ptrdiff_t>(bi));
      const std::string x = new_arc();
      protos[a.tri].sides[a.pos] = Side{x, false};
      protos[b.tri].sides[b.pos] = Side{x, false};
    } else {
      const Slot s = take_slot();
      Proto n;
      n.name = "T" + std::to_string(++ordinary);
      const std::size_t pos = uniform(rng, 0, 2);
      const std::string x = new_arc();
      n.sides[pos] = Side{x, false};
      protos[s.tri].sides[s.pos] = Side{x, false};
      const std::size_t idx = protos.size();
      protos.push_back(n);
      for (std::size_t p = 0; p < 3; ++p) {
        if (p != pos) free.push_back({idx, p});
      }
    }
  }
  if (free.empty()) return std::nullopt;

  int segments = 0;
  for (const Slot& s : free) {
    std::string name = "s" + std::to_string(++segments);
    t.boundary_segments.push_back(name);
    protos[s.tri].sides[s.pos] = Side{name, true};
  }
  for (const Proto& p : protos) {
    if (p.folded) {
      t.triangles.push_back(Triangle::folded(p.name, p.loop, p.radius));
    } else {
      t.triangles.push_back(Triangle::ordinary(p.name, *p.sides[0], *p.sides[1], *p.sides[2]));
    }
  }
  if (!validate_signature_zero(t).empty()) return std::nullopt;
  return t;
}

// Non-backtracking step choices at u, leaves excluded.
std::vector<EdgeId> step_choices(const LeafyDualGraph& g, VertexId u, std::optional<EdgeId> prev) {
  std::vector<EdgeId> out;
  for (DartId d : g.graph.darts_at(u)) {
    const EdgeId e = g.graph.dart(d).edge;
    if (g.info(e).kind == EdgeKind::leaf || (prev && e == *prev)) continue;
    out.push_back(e);
  }
  return out;
}

// Appends a trip from `cur` around a random puncture; returns false if none is
// reachable without eta edges.
bool append_detour(const LeafyDualGraph& g, Rng& rng, VertexId& cur, std::vector<EdgeId>& word) {
  if (g.clusters.empty()) return false;
  const SelfFoldedCluster& c = pick(rng, g.clusters);
  const VertexId outer = g.graph.other_end(c.loop_dual, c.v);
  const auto path = random_path(g, rng, cur, outer);
  if (!path) return false;
  word.insert(word.end(), path->edges.begin(), path->edges.end());
  word.push_back(c.loop_dual);
  const std::size_t pairs = uniform(rng, 1, 3);
  bool first = chance(rng, 0.5);
  for (std::size_t i = 0; i < 2 * pairs; ++i) {
    word.push_back(first ? c.eta1 : c.eta2);
    first = !first;
  }
  word.push_back(c.loop_dual);
  if (chance(rng, 0.5)) {
    word.insert(word.end(), path->edges.rbegin(), path->edges.rend());
  } else {
    cur = outer;
  }
  return true;
}

// Leaves a w or v vertex through the loop edge, so BFS paths can take over.
void climb_out(const LeafyDualGraph& g, VertexId& cur, std::vector<EdgeId>& word) {
  const SelfFoldedCluster* c = g.cluster_at(cur);
  if (!c) return;
  if (cur == c->w) {
    const EdgeId last = word.empty() ? c->eta1 : word.back();
    word.push_back(last == c->eta1 ? c->eta2 : c->eta1);
    cur = c->v;
  }
  if (cur == c->v) {
    word.push_back(c->loop_dual);
    cur = g.graph.other_end(c->loop_dual, c->v);
  }
}

}  // namespace

Triangulation random_triangulation(Rng& rng, const TriangulationParams& params) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const bool gluing = params.allow_extra_gluing && attempt < 200;
    if (auto t = try_build(rng, params, gluing)) return *t;
  }
  throw PreconditionError("random_triangulation: no valid triangulation for these parameters");
}

std::vector<VertexId> regular_vertices(const LeafyDualGraph& g) {
  std::vector<VertexId> out;
  for (std::uint32_t i = 0; i < g.graph.vertex_count(); ++i) {
    if (g.is_regular(VertexId{i})) out.push_back(VertexId{i});
  }
  return out;
}

std::optional<Walk> random_path(const LeafyDualGraph& g, Rng& rng, VertexId u, VertexId v) {
  const std::size_t n = g.graph.vertex_count();
  std::vector<std::optional<EdgeId>> via(n);
  std::vector<bool> seen(n, false);
  std::deque<VertexId> queue{u};
  seen[u.value()] = true;
  while (!queue.empty() && !seen[v.value()]) {
    const VertexId x = queue.front();
    queue.pop_front();
    std::vector<EdgeId> edges;
    for (DartId d : g.graph.darts_at(x)) edges.push_back(g.graph.dart(d).edge);
    std::shuffle(edges.begin(), edges.end(), rng);
    for (EdgeId e : edges) {
      const EdgeKind k = g.info(e).kind;
      if (k == EdgeKind::eta || k == EdgeKind::leaf) continue;
      const VertexId y = g.graph.other_end(e, x);
      if (seen[y.value()]) continue;
      seen[y.value()] = true;
      via[y.value()] = e;
      queue.push_back(y);
    }
  }
  if (!seen[v.value()]) return std::nullopt;
  std::vector<EdgeId> rev;
  for (VertexId x = v; x != u;) {
    const EdgeId e = *via[x.value()];
    rev.push_back(e);
    x = g.graph.other_end(e, x);
  }
  return Walk{u, v, {rev.rbegin(), rev.rend()}};
}

Walk random_walk(const LeafyDualGraph& g, Rng& rng, VertexId from, std::span<const VertexId> targets,
                 const WalkParams& params) {
  if (targets.empty()) throw InputError("random_walk: no target vertices");
  for (int attempt = 0; attempt < 50; ++attempt) {
    const std::size_t budget = uniform(rng, 1, std::max<std::size_t>(1, params.max_length));
    std::vector<EdgeId> word;
    VertexId cur = from;
    while (word.size() < budget) {
      if (chance(rng, params.detour_rate) && append_detour(g, rng, cur, word)) continue;
      std::optional<EdgeId> prev;
      if (!word.empty()) prev = word.back();
      auto choices = step_choices(g, cur, prev);
      if (choices.empty()) choices = step_choices(g, cur, std::nullopt);
      if (choices.empty()) break;
      const EdgeId e = pick(rng, choices);
      word.push_back(e);
      cur = g.graph.other_end(e, cur);
    }
    climb_out(g, cur, word);
    const VertexId target = targets[uniform(rng, 0, targets.size() - 1)];
    const auto path = random_path(g, rng, cur, target);
    if (!path) continue;
    word.insert(word.end(), path->edges.begin(), path->edges.end());
    Walk w = standard_form(g.graph, from, word);
    if (w.length() <= params.max_length) return w;
  }
  for (VertexId target : targets) {
    if (auto p = random_path(g, rng, from, target)) return *p;
  }
  throw InputError("random_walk: no target reachable from " + g.graph.label(from));
}

std::optional<Walk> random_closed_walk(const LeafyDualGraph& g, Rng& rng, VertexId base, const WalkParams& params) {
  const VertexId targets[] = {base};
  for (int attempt = 0; attempt < 50; ++attempt) {
    Walk w = random_walk(g, rng, base, targets, params);
    if (!cyclic_reduce(g.graph, w).is_identity()) return w;
  }
  return std::nullopt;
}

GeneratorSample random_generator(const LeafyDualGraph& g, Rng& rng, VertexId u, const WalkParams& params) {
  if (g.clusters.empty()) throw InputError("random_generator: no self-folded triangles");
  const SelfFoldedCluster& c = pick(rng, g.clusters);
  const VertexId targets[] = {c.v};
  GeneratorSample out;
  out.cluster = c.name;
  out.conjugator = random_walk(g, rng, u, targets, params);
  out.generator = loop_generator(g, u, c.name, out.conjugator);
  return out;
}

Walk conjugated_square(const LeafyDualGraph& g, Rng& rng, VertexId u, const WalkParams& params) {
  const Walk gen = random_generator(g, rng, u, params).generator;
  return compose(gen, gen);
}

std::optional<FlipMove> random_move(const Triangulation& t, Rng& rng) {
  std::vector<FlipMove> candidates;
  for (const auto& a : t.arcs) candidates.push_back({FlipMove::Kind::standard, a});
  for (const auto& tri : t.triangles) {
    if (tri.self_folded) candidates.push_back({FlipMove::Kind::double_flip, tri.name});
  }
  std::shuffle(candidates.begin(), candidates.end(), rng);
  for (const auto& m : candidates) {
    try {
      flip(t, m);
      return m;
    } catch (const NotFlippable&) {
    }
  }
  return std::nullopt;
}

std::optional<KeyLemmaInstance> random_key_lemma_instance(const LeafyDualGraph& g, Rng& rng,
                                                          const WalkParams& params) {
  std::vector<VertexId> triangles;
  for (VertexId u : regular_vertices(g)) {
    if (g.info(u).kind == VertexKind::triangle && g.graph.darts_at(u).size() == 3) triangles.push_back(u);
  }
  if (triangles.empty() || g.clusters.empty()) return std::nullopt;
  const auto regular = regular_vertices(g);

  for (int attempt = 0; attempt < 500; ++attempt) {
    const VertexId u1 = pick(rng, triangles);
    std::vector<EdgeId> edges;
    for (DartId d : g.graph.darts_at(u1)) edges.push_back(g.graph.dart(d).edge);
    if (edges[0] == edges[1] || edges[1] == edges[2] || edges[0] == edges[2]) continue;
    std::shuffle(edges.begin(), edges.end(), rng);
    const EdgeId e1 = edges[0];
    const EdgeId e2 = edges[1];
    const EdgeId d1 = edges[2];
    const VertexId u0 = g.graph.other_end(e1, u1);
    const VertexId w0 = g.graph.other_end(d1, u1);
    if (!g.is_regular(u0) || !g.is_regular(w0)) continue;

    // e2, then a trip around a puncture, then a random tail.
    VertexId cur = g.graph.other_end(e2, u1);
    std::vector<EdgeId> word{e2};
    climb_out(g, cur, word);
    if (!append_detour(g, rng, cur, word)) continue;
    const Walk tail = random_walk(g, rng, cur, regular, params);
    word.insert(word.end(), tail.edges.begin(), tail.edges.end());
    const Walk middle = standard_form(g.graph, u1, word);
    if (middle.edges.empty() || middle.edges.front() != e2 || middle.length() + 1 > params.max_length) continue;
    if (find_kinks(g, middle).empty()) continue;

    KeyLemmaInstance inst;
    inst.f = Walk{u0, middle.finish, {e1}};
    inst.f.edges.insert(inst.f.edges.end(), middle.edges.begin(), middle.edges.end());
    inst.h = Walk{middle.finish, w0, {middle.edges.rbegin(), middle.edges.rend()}};
    inst.h.edges.push_back(d1);
    return inst;
  }
  return std::nullopt;
}

}  // namespace orbikink
