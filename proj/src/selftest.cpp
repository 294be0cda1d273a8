#include "orbikink/selftest.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <exception>
#include <memory>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "orbikink/document.hpp"
#include "orbikink/errors.hpp"
#include "orbikink/generators.hpp"
#include "orbikink/groupoid.hpp"

namespace orbikink {

using nlohmann::json;

namespace {

enum SuiteId : std::uint64_t { kConfluence = 1, kMembership, kSection, kOrderTwo, kFlips, kKeyLemma };

struct Arena {
  Triangulation t;
  std::shared_ptr<const LeafyDualGraph> g;
  std::vector<VertexId> basepoints;
  std::vector<VertexId> regular;
};

std::vector<Arena> make_pool(const SelftestConfig& cfg) {
  std::seed_seq seq{cfg.seed, std::uint64_t{0}};
  Rng rng(seq);
  std::vector<Arena> pool;
  while (pool.size() < std::max<std::size_t>(1, cfg.pool)) {
    Arena a;
    a.t = random_triangulation(rng);
    auto g = std::make_shared<LeafyDualGraph>(leafy_dual_graph(a.t));
    if (g->clusters.empty()) continue;  // the groupoid suites need punctures
    a.basepoints = g->basepoints();
    a.regular = regular_vertices(*g);
    a.g = std::move(g);
    pool.push_back(std::move(a));
  }
  return pool;
}

Rng case_rng(const SelftestConfig& cfg, SuiteId suite, std::size_t index) {
  std::seed_seq seq{cfg.seed, static_cast<std::uint64_t>(suite), static_cast<std::uint64_t>(index)};
  return Rng(seq);
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

struct Outcome {
  bool ok = true;
  json example;  // filled on failure
};

// Runs f(i) for i in [0, n) on `jobs` threads. Exceptions become failures.
template <typename R, typename F>
std::vector<R> run_cases(std::size_t n, unsigned jobs, F f) {
  std::vector<R> out(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = f(i);
      } catch (const std::exception& e) {
        out[i].ok = false;
        out[i].example = {{"case", i}, {"exception", e.what()}};
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

json describe(const Arena& a, const Walk& w, bool closed = false) {
  return {{"triangulation", json::parse(dump_triangulation(a.t))},
          {"walk", format_walk(a.g->graph, w)},
          {"closed", closed}};
}

template <typename R>
SuiteResult tally(std::string name, const std::vector<R>& results, const SelftestConfig& cfg) {
  SuiteResult r;
  r.name = std::move(name);
  r.cases = results.size();
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].ok) continue;
    if (r.failures++ == 0) {
      json ex = results[i].example;
      ex["suite"] = r.name;
      ex["case"] = i;
      ex["seed"] = cfg.seed;
      ex["rng"] = kRngName;
      r.counterexample = ex.dump();
    }
  }
  return r;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- confluence, drop rules, strict decrease ----

struct StepCheck {
  std::size_t steps = 0;
  std::array<std::size_t, 4> by_multiplicity{};  // 1, 2, 3, >3
  std::vector<std::string> drop_violations;
  std::vector<std::string> strict_violations;

  void operator()(const StepRecord& s) {
    ++steps;
    const std::size_t mult = s.kink.multiplicity;
    ++by_multiplicity[std::min<std::size_t>(mult, 4) - 1];
    if (s.multiplicity_after >= s.multiplicity_before) {
      strict_violations.push_back("total multiplicity " + std::to_string(s.multiplicity_before) + " -> " +
                                  std::to_string(s.multiplicity_after));
    }
    const long length_drop = static_cast<long>(s.length_before) - static_cast<long>(s.length_after);
    std::string bad;
    if (mult == 1) {
      if (length_drop != 0) bad = "multiplicity 1 changed the length by " + std::to_string(-length_drop);
    } else if (mult == 2) {
      if (length_drop < 4) bad = "multiplicity 2 dropped the length by " + std::to_string(length_drop);
    } else {
      const long kink_drop = static_cast<long>(mult) - static_cast<long>(s.kink_multiplicity_after.value_or(0));
      const bool drop_ok = mult == 3 ? (kink_drop == 2 || kink_drop == 3) : kink_drop == 2;
      if (!drop_ok || length_drop != 4) {
        bad = "multiplicity " + std::to_string(mult) + ": kink drop " + std::to_string(kink_drop) + ", length drop " +
              std::to_string(length_drop);
      }
    }
    if (!bad.empty()) drop_violations.push_back(bad);
  }
};

struct ConfluenceCase {
  bool ok = true;  // agreement
  bool order_two = false;  // normal forms not unique there, not compared
  json example;
  StepCheck check;
};

struct NormalizeRun {
  std::vector<std::string> outputs;  // printed normal forms, one per strategy
  bool threw = false;
  bool order_two = false;
  std::string error;
};

NormalizeRun normalize_open(const Arena& a, const Walk& w, const std::vector<std::uint64_t>& seeds,
                            const KinkOptions& opt, StepCheck* check) {
  NormalizeRun run;
  StepObserver obs;
  if (check) obs = [check](const StepRecord& s) { (*check)(s); };
  for (std::uint64_t s : seeds) {
    try {
      const Walk nf = normalize(*a.g, w, ResolutionStrategy::random(s), obs, opt);
      run.order_two = run.order_two || looks_order_two(*a.g, nf);
      run.outputs.push_back(format_walk(a.g->graph, nf));
    } catch (const std::logic_error& e) {
      run.threw = true;
      run.error = e.what();
      return run;
    }
  }
  return run;
}

NormalizeRun normalize_closed(const Arena& a, const ClosedWalkClass& c, const std::vector<std::uint64_t>& seeds,
                              const KinkOptions& opt, StepCheck* check) {
  NormalizeRun run;
  StepObserver obs;
  if (check) obs = [check](const StepRecord& s) { (*check)(s); };
  for (std::uint64_t s : seeds) {
    try {
      const auto nf = unoriented(a.g->graph, normalize(*a.g, c, ResolutionStrategy::random(s), obs, opt));
      run.outputs.push_back(format_walk(a.g->graph, nf.representative()));
    } catch (const Contractible&) {
      run.outputs.push_back("contractible");
    } catch (const std::logic_error& e) {
      run.threw = true;
      run.error = e.what();
      return run;
    }
  }
  return run;
}

bool all_same(const NormalizeRun& run) {
  if (run.threw) return false;
  for (const auto& s : run.outputs) {
    if (s != run.outputs.front()) return false;
  }
  return true;
}

// Trims edges off either end of a failing open walk while it keeps failing
// and still runs between boundary segments.
Walk shrink_open(const Arena& a, Walk w, const std::vector<std::uint64_t>& seeds, const KinkOptions& opt) {
  auto fails = [&](const Walk& x) {
    const auto run = normalize_open(a, x, seeds, opt, nullptr);
    return !run.order_two && !all_same(run);
  };
  for (bool changed = true; changed && w.length() > 1;) {
    changed = false;
    const VertexId head_start = a.g->graph.other_end(w.edges.front(), w.start);
    Walk head{head_start, w.finish, {w.edges.begin() + 1, w.edges.end()}};
    if (a.g->is_basepoint(head_start) && fails(head)) {
      w = std::move(head);
      changed = true;
      continue;
    }
    const VertexId tail_finish = a.g->graph.other_end(w.edges.back(), w.finish);
    Walk tail{w.start, tail_finish, {w.edges.begin(), w.edges.end() - 1}};
    if (a.g->is_basepoint(tail_finish) && fails(tail)) {
      w = std::move(tail);
      changed = true;
    }
  }
  return w;
}

}  // namespace

bool looks_order_two(const LeafyDualGraph& g, const Walk& nf) {
  const std::size_t n = nf.length();
  if (n < 2 || n % 2 != 0 || !nf.is_loop()) return false;
  const EdgeId a = nf.edges[n / 2 - 1];
  const EdgeId b = nf.edges[n / 2];
  if (!g.is_eta(a) || !g.is_eta(b) || a == b || g.cluster_of(a) != g.cluster_of(b)) return false;
  for (std::size_t t = 0; t + 1 < n / 2; ++t) {
    if (nf.edges[t] != nf.edges[n - 1 - t]) return false;
  }
  return true;
}

std::vector<SuiteResult> confluence_suite(const SelftestConfig& cfg, std::size_t walks, std::size_t strategies) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto pool = make_pool(cfg);
  auto results = run_cases<ConfluenceCase>(walks, cfg.jobs, [&](std::size_t i) {
    const Arena& a = pool[i % pool.size()];
    Rng rng = case_rng(cfg, kConfluence, i);
    std::vector<std::uint64_t> seeds(strategies);
    for (auto& s : seeds) s = rng();
    ConfluenceCase c;
    const bool closed = i % 3 == 2;
    std::optional<Walk> loop;
    std::optional<Walk> open;
    if (closed) loop = random_closed_walk(*a.g, rng, pick(rng, a.regular));
    if (loop) {
      const ClosedWalkClass cls = canonical_closed(a.g->graph, *loop);
      const auto run = normalize_closed(a, cls, seeds, cfg.kink, &c.check);
      if (!all_same(run)) {
        c.ok = false;
        c.example = describe(a, cls.representative(), true);
        c.example["strategy_seeds"] = seeds;
        c.example["outputs"] = run.outputs;
        if (run.threw) c.example["error"] = run.error;
      }
    } else {
      const Walk w = random_walk(*a.g, rng, pick(rng, a.basepoints), a.basepoints);
      open = w;
      const auto run = normalize_open(a, w, seeds, cfg.kink, &c.check);
      c.order_two = run.order_two && !run.threw;
      if (!c.order_two && !all_same(run)) {
        c.ok = false;
        const Walk small = shrink_open(a, w, seeds, cfg.kink);
        c.example = describe(a, small);
        c.example["original_walk"] = format_walk(a.g->graph, w);
        c.example["strategy_seeds"] = seeds;
        c.example["outputs"] = normalize_open(a, small, seeds, cfg.kink, nullptr).outputs;
        if (run.threw) c.example["error"] = run.error;
      }
    }
    if (!c.ok) return c;
    if (!c.check.drop_violations.empty() || !c.check.strict_violations.empty()) {
      // Keep the walk around for the other two reports.
      c.example = loop ? describe(a, canonical_closed(a.g->graph, *loop).representative(), true)
                       : describe(a, *open);
      c.example["strategy_seeds"] = seeds;
    }
    return c;
  });

  SuiteResult agree = tally("confluence", results, cfg);
  SuiteResult drops;
  drops.name = "drop-lemmas";
  SuiteResult strict;
  strict.name = "strict-decrease";
  std::array<std::size_t, 4> hist{};
  std::size_t steps = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const StepCheck& s = results[i].check;
    steps += s.steps;
    for (std::size_t m = 0; m < 4; ++m) hist[m] += s.by_multiplicity[m];
    drops.failures += s.drop_violations.size();
    strict.failures += s.strict_violations.size();
    if (!s.drop_violations.empty() && !drops.counterexample) {
      json ex = results[i].example;
      ex.update(json{{"suite", drops.name}, {"case", i}, {"seed", cfg.seed}, {"violation", s.drop_violations.front()}});
      drops.counterexample = ex.dump();
    }
    if (!s.strict_violations.empty() && !strict.counterexample) {
      json ex = results[i].example;
      ex.update(
          json{{"suite", strict.name}, {"case", i}, {"seed", cfg.seed}, {"violation", s.strict_violations.front()}});
      strict.counterexample = ex.dump();
    }
  }
  drops.cases = strict.cases = steps;
  std::ostringstream st;
  st << "triangulations=" << pool.size() << " strategies=" << strategies << " steps=" << steps
     << " mult1=" << hist[0] << " mult2=" << hist[1] << " mult3=" << hist[2] << " mult4+=" << hist[3];
  drops.stats = strict.stats = st.str();
  const auto skipped = std::ranges::count_if(results, [](const ConfluenceCase& c) { return c.order_two; });
  agree.stats = st.str() + " order_two_skipped=" + std::to_string(skipped);
  agree.seconds = drops.seconds = strict.seconds = seconds_since(t0);
  return {agree, drops, strict};
}

SuiteResult k_membership_suite(const SelftestConfig& cfg, std::size_t products, std::size_t kink_free) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto pool = make_pool(cfg);
  auto results = run_cases<Outcome>(products + kink_free, cfg.jobs, [&](std::size_t i) {
    const Arena& a = pool[i % pool.size()];
    Rng rng = case_rng(cfg, kMembership, i);
    const VertexId u = pick(rng, a.basepoints);
    Outcome o;
    if (i < products) {
      const std::size_t count = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
      Walk w = identity_at(u);
      for (std::size_t k = 0; k < count; ++k) w = compose(w, conjugated_square(*a.g, rng, u, {60, 0.25}));
      if (!normalize(*a.g, w).is_identity()) {
        o.ok = false;
        o.example = describe(a, w);
      }
      return o;
    }
    for (int attempt = 0; attempt < 50; ++attempt) {
      const Walk w = random_walk(*a.g, rng, u, a.basepoints);
      const Walk nf = normalize(*a.g, w);
      if (nf.is_identity()) continue;
      if (!find_kinks(*a.g, nf).empty() || normalize(*a.g, nf) != nf) {
        o.ok = false;
        o.example = describe(a, nf);
      }
      return o;
    }
    o.ok = false;
    o.example = {{"error", "no non-identity walk found"}};
    return o;
  });
  SuiteResult r = tally("k-membership", results, cfg);
  r.stats = "products=" + std::to_string(products) + " kink_free=" + std::to_string(kink_free);
  r.seconds = seconds_since(t0);
  return r;
}

SuiteResult section_suite(const SelftestConfig& cfg, std::size_t walks) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto pool = make_pool(cfg);
  std::atomic<std::size_t> order_two{0};
  auto results = run_cases<Outcome>(walks, cfg.jobs, [&](std::size_t i) {
    const Arena& a = pool[i % pool.size()];
    Rng rng = case_rng(cfg, kSection, i);
    const VertexId u = pick(rng, a.basepoints);
    const VertexId v = pick(rng, a.basepoints);
    const VertexId target[] = {v};
    Walk f = random_walk(*a.g, rng, u, target);
    if (i % 3 == 0) f = compose(f, conjugated_square(*a.g, rng, v, {60, 0.25}));
    Outcome o;
    o.example = describe(a, f);
    if (f.is_loop() && is_order_two(*a.g, f)) {
      ++order_two;
      try {
        iota(*a.g, f);
        o.ok = false;
        o.example["error"] = "iota accepted an order-two class";
      } catch (const OrderTwoClass&) {
      }
      return o;
    }
    const Walk x = iota(*a.g, f);
    o.ok = find_kinks(*a.g, x).empty() && orbifold_equal(*a.g, x, f) && iota(*a.g, x) == x;
    return o;
  });
  SuiteResult r = tally("section", results, cfg);
  r.stats = "order_two_skipped=" + std::to_string(order_two.load());
  r.seconds = seconds_since(t0);
  return r;
}

SuiteResult order_two_suite(const SelftestConfig& cfg, std::size_t generators, std::size_t loops) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto pool = make_pool(cfg);
  std::atomic<std::size_t> positives{0};
  auto results = run_cases<Outcome>(generators + loops, cfg.jobs, [&](std::size_t i) {
    const Arena& a = pool[i % pool.size()];
    Rng rng = case_rng(cfg, kOrderTwo, i);
    const VertexId u = pick(rng, a.basepoints);
    Outcome o;
    if (i < generators) {
      const auto sample = random_generator(*a.g, rng, u);
      o.ok = is_order_two(*a.g, sample.generator) && looks_order_two(*a.g, normalize(*a.g, sample.generator));
      if (!o.ok) o.example = describe(a, sample.generator);
      return o;
    }
    const VertexId home[] = {u};
    Walk loop = identity_at(u);
    const std::size_t pieces = std::uniform_int_distribution<std::size_t>(2, 4)(rng);
    for (std::size_t k = 0; k < pieces; ++k) {
      Walk piece = normalize(*a.g, random_walk(*a.g, rng, u, home, {50, 0.25}));
      if (std::bernoulli_distribution(0.3)(rng)) piece = normalize(*a.g, random_generator(*a.g, rng, u).generator);
      loop = compose(loop, piece);
    }
    if (std::bernoulli_distribution(0.25)(rng)) {
      // Conjugate a generator by the loop so far: order two by construction.
      const Walk gen = random_generator(*a.g, rng, u, {50, 0.25}).generator;
      loop = compose(compose(loop, gen), invert(loop));
    }
    const bool claimed = is_order_two(*a.g, loop);
    const Walk nf = normalize(*a.g, loop);
    const bool square_trivial = !nf.is_identity() && normalize(*a.g, compose(nf, nf)).is_identity();
    const bool structural = looks_order_two(*a.g, nf);
    if (claimed) ++positives;
    o.ok = claimed == square_trivial && claimed == structural;
    if (!o.ok) {
      o.example = describe(a, loop);
      o.example["claimed"] = claimed;
      o.example["square_trivial"] = square_trivial;
      o.example["structural"] = structural;
    }
    return o;
  });
  SuiteResult r = tally("order-two", results, cfg);
  r.stats = "generators=" + std::to_string(generators) + " loops=" + std::to_string(loops) +
            " loops_of_order_two=" + std::to_string(positives.load());
  r.seconds = seconds_since(t0);
  return r;
}

SuiteResult flip_suite(const SelftestConfig& cfg, std::size_t triples) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto pool = make_pool(cfg);
  std::atomic<std::size_t> equal_pairs{0};
  std::atomic<std::size_t> kinked{0};
  auto results = run_cases<Outcome>(triples, cfg.jobs, [&](std::size_t i) {
    const Arena& a = pool[i % pool.size()];
    Rng rng = case_rng(cfg, kFlips, i);
    Outcome o;
    const auto move = random_move(a.t, rng);
    if (!move) {
      o.ok = false;
      o.example = {{"error", "no flippable move"}, {"triangulation", json::parse(dump_triangulation(a.t))}};
      return o;
    }
    const FlipTransport fwd(a.t, *move);
    const FlipTransport back(fwd.target(), inverse_move(*move));
    const LeafyDualGraph& g = *a.g;
    const LeafyDualGraph& g2 = fwd.target_graph();

    const VertexId u = pick(rng, a.basepoints);
    const Walk w = random_walk(g, rng, u, a.basepoints);
    o.example = describe(a, w);
    o.example["move"] = json::parse(dump_flip_script({*move}));
    std::vector<std::string> problems;

    const Walk tw = fwd.transport(w);
    const Walk bw = back.transport(tw);
    const auto& g3 = back.target_graph().graph;
    if (bw.edges.size() != w.edges.size() || g3.label(bw.start) != g.graph.label(w.start) ||
        g3.label(bw.finish) != g.graph.label(w.finish)) {
      problems.push_back("round trip changed the walk");
    } else {
      for (std::size_t k = 0; k < w.edges.size(); ++k) {
        if (g3.label(bw.edges[k]) != g.graph.label(w.edges[k])) {
          problems.push_back("round trip changed the walk");
          break;
        }
      }
    }

    const bool has = !find_kinks(g, w).empty();
    if (has) ++kinked;
    if (has != !find_kinks(g2, tw).empty()) problems.push_back("kink presence differs across the flip");
    const Walk nf = normalize(g, w);
    const Walk tnf = fwd.transport(nf);
    if (!find_kinks(g2, tnf).empty()) problems.push_back("transported normal form has kinks");
    if (!orbifold_equal(g2, tnf, normalize(g2, tw))) problems.push_back("transport does not commute with normalize");

    // A partner walk, made orbifold-equal half of the time.
    const VertexId end[] = {w.finish};
    Walk partner = std::bernoulli_distribution(0.5)(rng)
                       ? compose(w, conjugated_square(g, rng, w.finish, {60, 0.25}))
                       : random_walk(g, rng, u, end);
    const bool eq = orbifold_equal(g, w, partner);
    if (eq) ++equal_pairs;
    if (eq != orbifold_equal(g2, tw, fwd.transport(partner))) {
      problems.push_back("orbifold equality not preserved");
      o.example["partner"] = format_walk(g.graph, partner);
    }

    o.ok = problems.empty();
    if (!o.ok) o.example["problems"] = problems;
    return o;
  });
  SuiteResult r = tally("flips", results, cfg);
  r.stats = "walks_with_kinks=" + std::to_string(kinked.load()) + " equal_pairs=" + std::to_string(equal_pairs.load());
  r.seconds = seconds_since(t0);
  return r;
}

SuiteResult key_lemma_suite(const SelftestConfig& cfg, std::size_t instances) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto pool = make_pool(cfg);
  std::atomic<std::size_t> multi{0};
  auto results = run_cases<Outcome>(instances, cfg.jobs, [&](std::size_t i) {
    Rng rng = case_rng(cfg, kKeyLemma, i);
    Outcome o;
    for (std::size_t k = 0; k < pool.size(); ++k) {
      const Arena& a = pool[(i + k) % pool.size()];
      const auto inst = random_key_lemma_instance(*a.g, rng, {120, 0.25});
      if (!inst) continue;
      const Walk& f = inst->f;
      const Walk tail{a.g->graph.other_end(f.edges.front(), f.start), f.finish, {f.edges.begin() + 1, f.edges.end()}};
      const auto kinks = find_kinks(*a.g, tail);
      const std::size_t idx = std::uniform_int_distribution<std::size_t>(0, kinks.size() - 1)(rng);
      if (kinks[idx].multiplicity > 1) ++multi;
      const KeyLemmaReport rep = check_key_lemma(*a.g, f, inst->h, idx);
      o.ok = rep.passed;
      if (!o.ok) {
        o.example = describe(a, f);
        o.example["h"] = format_walk(a.g->graph, inst->h);
        o.example["kink_index"] = idx;
        o.example["failure"] = rep.failure;
      }
      return o;
    }
    o.ok = false;
    o.example = {{"error", "no key-lemma instance could be constructed"}};
    return o;
  });
  SuiteResult r = tally("key-lemma", results, cfg);
  r.stats = "higher_multiplicity=" + std::to_string(multi.load());
  r.seconds = seconds_since(t0);
  return r;
}

std::vector<SuiteResult> run_selftest(const SelftestConfig& cfg, std::size_t cases) {
  std::vector<SuiteResult> out;
  if (cases == 0) return out;
  for (auto& r : confluence_suite(cfg, 10 * cases, 10)) out.push_back(std::move(r));
  out.push_back(k_membership_suite(cfg, cases, cases));
  out.push_back(section_suite(cfg, cases));
  out.push_back(order_two_suite(cfg, cases, cases));
  out.push_back(flip_suite(cfg, std::max<std::size_t>(1, cases / 2)));
  out.push_back(key_lemma_suite(cfg, std::max<std::size_t>(1, cases / 10)));
  return out;
}

}  // namespace orbikink
