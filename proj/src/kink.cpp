#include "orbikink/kink.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "orbikink/errors.hpp"

namespace orbikink {

namespace {

// A walk viewed as an open or cyclic edge sequence, with its vertices.
class Sequence {
 public:
  Sequence(const LeafyDualGraph& g, const Walk& w, bool cyclic)
      : g_(g), edges_(w.edges), vertices_(vertex_sequence(g.graph, w)), cyclic_(cyclic) {}

  std::size_t size() const { return edges_.size(); }
  bool cyclic() const { return cyclic_; }

  // Positions are 0-based and may leave [0, n) for cyclic sequences.
  EdgeId edge(std::ptrdiff_t i) const { return edges_[wrap(i)]; }
  bool is_eta(std::ptrdiff_t i) const { return g_.is_eta(edge(i)); }
  bool in_range(std::ptrdiff_t i) const {
    return cyclic_ || (i >= 0 && i < static_cast<std::ptrdiff_t>(edges_.size()));
  }

  // Turn from edge i into edge i+1.
  TurnSign sign(std::ptrdiff_t i) const {
    const std::size_t k = wrap(i);
    return turn_sign(g_.graph, edges_[k], edges_[wrap(i + 1)], vertices_[k + 1]);
  }

 private:
  std::size_t wrap(std::ptrdiff_t i) const {
    const auto n = static_cast<std::ptrdiff_t>(edges_.size());
    return static_cast<std::size_t>(((i % n) + n) % n);
  }

  const LeafyDualGraph& g_;
  const std::vector<EdgeId>& edges_;
  std::vector<VertexId> vertices_;
  bool cyclic_;
};

Kink make_kink(const Sequence& s, const LeafyDualGraph& g, std::ptrdiff_t j0, std::size_t span, std::size_t r,
               std::size_t multiplicity, std::ptrdiff_t core0) {
  const auto n = static_cast<std::ptrdiff_t>(s.size());
  Kink k;
  const std::ptrdiff_t jw = s.cyclic() ? ((j0 % n) + n) % n : j0;
  k.j = static_cast<std::size_t>(jw) + 1;
  k.m = k.j + span - 1;
  k.r = r;
  k.multiplicity = multiplicity;
  k.core_begin = static_cast<std::size_t>(core0 - j0) + k.j;
  k.core_end = multiplicity == 1 ? k.core_begin + 1 : k.core_begin + 2 * r + 1;
  const EdgeInfo& first = g.info(s.edge(core0));
  k.triangle = first.name;
  k.eta_first = first.eta_index;
  k.eta_second = g.info(s.edge(core0 + 1)).eta_index;
  return k;
}

std::vector<Kink> find_in_sequence(const LeafyDualGraph& g, const Sequence& s, const KinkOptions& opt) {
  std::vector<Kink> out;
  const auto n = static_cast<std::ptrdiff_t>(s.size());
  if (n == 0) return out;

  // Maximal eta runs as (start, length). Every run is alternating and sits
  // between two copies of the loop-dual edge, since the only way out of w_v
  // without backtracking is the other eta edge.
  std::vector<std::pair<std::ptrdiff_t, std::ptrdiff_t>> runs;
  std::ptrdiff_t origin = 0;
  if (s.cyclic()) {
    while (origin < n && s.is_eta(origin)) ++origin;
    if (origin == n) return out;  // a pure eta cycle has no flanks
  }
  for (std::ptrdiff_t i = origin; i < origin + n;) {
    if (!s.is_eta(i)) {
      ++i;
      continue;
    }
    std::ptrdiff_t len = 0;
    while (i + len < origin + n && s.is_eta(i + len)) ++len;
    runs.emplace_back(i, len);
    i += len;
  }

  for (const auto& [a, len] : runs) {
    if (!s.in_range(a - 1) || !s.in_range(a + len)) continue;
    if (len == 2) {
      // Mirrored flanks around the core (a, a+1); only the widest mirror
      // can meet the sign condition, since a narrower one has e_j = e_m and
      // then e_j -> e_{j+1} and e_{m-1} -> e_m are opposite turns.
      std::size_t r_max = 0;
      for (std::size_t r = 1;; ++r) {
        const auto rr = static_cast<std::ptrdiff_t>(r);
        const std::ptrdiff_t j0 = a - rr - 1;
        const std::ptrdiff_t m0 = a + rr + 2;
        if (s.cyclic() ? 2 * r + 4 > static_cast<std::size_t>(n) : (j0 < 0 || m0 >= n)) break;
        if (s.edge(a - rr) != s.edge(a + 1 + rr)) break;
        r_max = r;
      }
      if (r_max == 0) continue;
      const std::size_t r_lo = opt.skip_sign_condition ? 1 : r_max;
      for (std::size_t r = r_lo; r <= r_max; ++r) {
        const auto rr = static_cast<std::ptrdiff_t>(r);
        const std::ptrdiff_t j0 = a - rr - 1;
        const std::ptrdiff_t m0 = a + rr + 2;
        if (s.is_eta(a - 1)) continue;
        if (!opt.skip_sign_condition) {
          const TurnSign e = s.sign(j0);
          if (s.sign(a) != e || s.sign(m0 - 1) != e) continue;
        }
        out.push_back(make_kink(s, g, j0, 2 * r + 4, r, 1, a));
      }
    } else if (len >= 4) {
      const std::size_t span = static_cast<std::size_t>(len) + 2;
      if (s.cyclic() && span > static_cast<std::size_t>(n)) continue;
      if (s.edge(a - 1) != s.edge(a + len) || s.is_eta(a - 1)) continue;
      const std::size_t r = static_cast<std::size_t>(len - 2) / 2;
      out.push_back(make_kink(s, g, a - 1, span, r, r + 1, a));
    }
  }
  std::sort(out.begin(), out.end(), [](const Kink& x, const Kink& y) {
    return std::tie(x.j, x.m) < std::tie(y.j, y.m);
  });
  return out;
}

void check_open(const LeafyDualGraph& g, const Walk& f) {
  if (!is_backtrack_free(f)) throw InputError("walk is not in standard form");
  if (f.is_identity()) return;
  if (!g.is_regular(f.start) || !g.is_regular(f.finish)) {
    throw InputError("walk endpoints must be vertices of G(tau) other than self-folded triangles");
  }
}

bool contains(const std::vector<Kink>& kinks, const Kink& k) {
  return std::find(kinks.begin(), kinks.end(), k) != kinks.end();
}

std::size_t swap_index(const Kink& k, std::optional<std::size_t> swap_at) {
  if (k.multiplicity == 1) return k.core_begin;
  const std::size_t s = swap_at.value_or(k.core_begin);
  if (s < k.core_begin || s >= k.core_end) throw InputError("swap index outside the kink core");
  return s;
}

Walk swap_and_reduce(const LeafyDualGraph& g, const Walk& w, std::size_t s) {
  std::vector<EdgeId> word = w.edges;
  std::swap(word[s - 1], word[s]);
  return standard_form(g.graph, w.start, word);
}

// Resolution of a closed-walk kink before cyclic reduction: the walk is
// rotated so that the kink starts at position 1.
Walk resolve_closed_raw(const LeafyDualGraph& g, const ClosedWalkClass& f, const Kink& k, std::size_t s) {
  const Walk rotated = rotate(g.graph, f.representative(), k.j - 1);
  return swap_and_reduce(g, rotated, s - k.j + 1);
}

std::optional<std::size_t> multiplicity_at(const std::vector<Kink>& kinks, std::size_t core_begin, std::size_t n) {
  for (const auto& k : kinks) {
    const std::size_t c = n == 0 ? k.core_begin : (k.core_begin - 1) % n + 1;
    if (c == core_begin) return k.multiplicity;
  }
  return std::nullopt;
}

class Chooser {
 public:
  explicit Chooser(const ResolutionStrategy& s) : strategy_(s), rng_(s.seed) {}

  std::pair<Kink, std::size_t> pick(const std::vector<Kink>& kinks) {
    Kink k;
    if (strategy_.kind == ResolutionStrategy::Kind::random) {
      std::uniform_int_distribution<std::size_t> pick(0, kinks.size() - 1);
      k = kinks[pick(rng_)];
    } else {
      k = *std::min_element(kinks.begin(), kinks.end(), [](const Kink& x, const Kink& y) {
        return std::make_pair(x.core_begin, x.m - x.j) < std::make_pair(y.core_begin, y.m - y.j);
      });
    }
    std::size_t s = k.core_begin;
    if (k.multiplicity > 1 && strategy_.kind == ResolutionStrategy::Kind::random) {
      std::uniform_int_distribution<std::size_t> pick(k.core_begin, k.core_end - 1);
      s = pick(rng_);
    }
    return {k, s};
  }

 private:
  ResolutionStrategy strategy_;
  std::mt19937_64 rng_;
};

// Termination guard. Lengths never grow; at a fixed length the walks seen so
// far are remembered, and meeting one again means resolution is cycling.
class ProgressGuard {
 public:
  void check(const StepRecord& step, const std::vector<EdgeId>& walk) {
    if (step.length_after > step.length_before) {
      throw std::logic_error("kink resolution lengthened the walk (" + std::to_string(step.length_before) + " -> " +
                             std::to_string(step.length_after) + ")");
    }
    if (step.length_after < step.length_before) seen_.clear();
    if (!seen_.insert(walk).second) {
      throw std::logic_error("kink resolution revisited a walk of length " + std::to_string(step.length_after));
    }
  }

 private:
  std::set<std::vector<EdgeId>> seen_;
};

}  // namespace

std::vector<Kink> find_kinks(const LeafyDualGraph& g, const Walk& f, const KinkOptions& opt) {
  check_open(g, f);
  return find_in_sequence(g, Sequence(g, f, false), opt);
}

std::vector<Kink> find_kinks(const LeafyDualGraph& g, const ClosedWalkClass& f, const KinkOptions& opt) {
  return find_in_sequence(g, Sequence(g, f.representative(), true), opt);
}

std::size_t total_multiplicity(const std::vector<Kink>& kinks) {
  std::size_t total = 0;
  for (const auto& k : kinks) total += k.multiplicity;
  return total;
}

Walk resolve_kink(const LeafyDualGraph& g, const Walk& f, const Kink& k, std::optional<std::size_t> swap_at,
                  const KinkOptions& opt) {
  if (!contains(find_kinks(g, f, opt), k)) throw InputError("not a kink of this walk");
  return swap_and_reduce(g, f, swap_index(k, swap_at));
}

ClosedWalkClass resolve_kink(const LeafyDualGraph& g, const ClosedWalkClass& f, const Kink& k,
                             std::optional<std::size_t> swap_at, const KinkOptions& opt) {
  if (!contains(find_kinks(g, f, opt), k)) throw InputError("not a kink of this closed walk");
  return canonical_closed(g.graph, resolve_closed_raw(g, f, k, swap_index(k, swap_at)));
}

Walk normalize(const LeafyDualGraph& g, const Walk& f, const ResolutionStrategy& strategy,
               const StepObserver& observer, const KinkOptions& opt) {
  Walk current = f;
  std::vector<Kink> kinks = find_kinks(g, current, opt);
  Chooser chooser(strategy);
  ProgressGuard guard;
  while (!kinks.empty()) {
    const auto [k, s] = chooser.pick(kinks);
    StepRecord step;
    step.kink = k;
    step.swap_index = s;
    step.length_before = current.length();
    step.multiplicity_before = total_multiplicity(kinks);
    current = swap_and_reduce(g, current, s);
    kinks = find_kinks(g, current, opt);
    step.length_after = current.length();
    step.multiplicity_after = total_multiplicity(kinks);
    step.kink_multiplicity_after = multiplicity_at(kinks, k.core_begin, 0);
    if (observer) {
      step.result = current;
      observer(step);
    }
    guard.check(step, current.edges);
  }
  return current;
}

ClosedWalkClass normalize(const LeafyDualGraph& g, const ClosedWalkClass& f, const ResolutionStrategy& strategy,
                          const StepObserver& observer, const KinkOptions& opt) {
  ClosedWalkClass current = f;
  std::vector<Kink> kinks = find_kinks(g, current, opt);
  Chooser chooser(strategy);
  ProgressGuard guard;
  while (!kinks.empty()) {
    const auto [k, s] = chooser.pick(kinks);
    StepRecord step;
    step.kink = k;
    step.swap_index = s;
    step.length_before = current.length();
    step.multiplicity_before = total_multiplicity(kinks);
    const Walk raw = resolve_closed_raw(g, current, k, s);
    current = canonical_closed(g.graph, raw);
    kinks = find_kinks(g, current, opt);
    step.length_after = current.length();
    step.multiplicity_after = total_multiplicity(kinks);
    if (raw.length() == current.length()) {
      // No cyclic stripping, so positions in the rotated walk still line up
      // with the old kink (which now starts at position 1).
      const auto raw_kinks = find_in_sequence(g, Sequence(g, raw, true), opt);
      step.kink_multiplicity_after = multiplicity_at(raw_kinks, k.core_begin - k.j + 1, raw.length());
    }
    if (observer) {
      step.result = current.representative();
      observer(step);
    }
    guard.check(step, current.representative().edges);
  }
  // Kinks need flanks, so a pure eta cycle (eta_i eta_k)^p is left alone by
  // the loop above. The square of the puncture loop is trivial: keep p mod 2.
  const Walk rep = current.representative();
  const bool pure = std::ranges::all_of(rep.edges, [&](EdgeId e) { return g.info(e).eta_index != 0; });
  if (pure && rep.length() > 2) {
    if ((rep.length() / 2) % 2 == 0) throw Contractible();
    Walk once{rep.start, rep.start, {rep.edges[0], rep.edges[1]}};
    current = canonical_closed(g.graph, once);
  }
  return current;
}

KeyLemmaReport check_key_lemma(const LeafyDualGraph& g, const Walk& f, const Walk& h, std::size_t kink_index) {
  const std::size_t n = f.length();
  if (n < 2 || h.length() != n) throw InputError("key lemma: f and h must have the same length n >= 2");
  if (!is_backtrack_free(f) || !is_backtrack_free(h)) throw InputError("key lemma: walks must be in standard form");
  vertex_sequence(g.graph, f);
  vertex_sequence(g.graph, h);
  if (f.finish != h.start) throw InputError("key lemma: h must start where f ends");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (h.edges[i] != f.edges[n - 1 - i]) throw InputError("key lemma: h must retrace (e_n, ..., e_2)");
  }
  const EdgeId e1 = f.edges.front();
  const EdgeId d1 = h.edges.back();
  if (e1 == d1) throw InputError("key lemma: needs e_1 != d_1");
  for (VertexId u : {f.start, f.finish, h.finish}) {
    if (!g.is_regular(u)) throw InputError("key lemma: endpoints must be regular vertices of G(tau)");
  }

  const Walk tail{g.graph.other_end(e1, f.start), f.finish, {f.edges.begin() + 1, f.edges.end()}};
  const auto tail_kinks = find_in_sequence(g, Sequence(g, tail, false), {});
  if (kink_index >= tail_kinks.size()) throw InputError("key lemma: (e_2, ..., e_n) has no such kink");

  KeyLemmaReport rep;
  Kink k = tail_kinks[kink_index];
  k.j += 1;
  k.m += 1;
  k.core_begin += 1;
  k.core_end += 1;
  rep.kink = k;
  rep.direct = compose(f, h);

  auto fail = [&](std::string why) {
    rep.failure = std::move(why);
    return rep;
  };
  if (!contains(find_kinks(g, f), k)) return fail("kappa is not a kink of f");
  rep.resolved_f = resolve_kink(g, f, k);
  rep.product = compose(rep.resolved_f, h);

  // Expected shape: a prefix of f, a six-edge window around the core pair,
  // then the prefix retraced and d1.
  const std::size_t p = k.multiplicity == 1 ? k.j + k.r : k.j;  // 1-based window start
  const auto e = [&](std::size_t i) { return f.edges[i - 1]; };
  std::vector<EdgeId> expected(f.edges.begin(), f.edges.begin() + static_cast<std::ptrdiff_t>(p - 1));
  for (EdgeId x : {e(p), e(p + 2), e(p + 1), e(p + 2), e(p + 1), e(p)}) expected.push_back(x);
  for (std::size_t i = p - 1; i >= 2; --i) expected.push_back(e(i));
  expected.push_back(d1);
  if (rep.product.edges != expected) return fail("phi(rho_kappa(f) * h) does not have the expected shape");

  for (const auto& k2 : find_kinks(g, rep.product)) {
    if (k2.multiplicity == 2 && k2.j == p) rep.second_kink = k2;
  }
  if (!rep.second_kink) return fail("no multiplicity-2 kink at the expected window");
  rep.after_second = resolve_kink(g, rep.product, *rep.second_kink);
  if (rep.direct.edges != std::vector<EdgeId>{e1, d1}) return fail("phi(f * h) is not (e_1, d_1)");
  if (rep.after_second != rep.direct) return fail("rho_kappa'(phi(rho_kappa(f) * h)) differs from phi(f * h)");
  rep.passed = true;
  return rep;
}

}  // namespace orbikink
