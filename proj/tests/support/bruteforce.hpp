#pragma once

// Slow reference implementations used to cross-check the library. Nothing
// here calls into walk.cpp or kink.cpp; turns are read off the dart tables
// and kinks are found by scanning every (j, m) against the definition.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbikink/triangulation.hpp"

namespace oracle {

using orbikink::EdgeId;
using orbikink::LeafyDualGraph;
using orbikink::RibbonGraph;
using orbikink::VertexId;
using Word = std::vector<EdgeId>;

inline VertexId across(const RibbonGraph& g, EdgeId e, VertexId u) {
  const auto ds = g.darts_of(e);
  return g.dart(ds[0]).vertex == u ? g.dart(ds[1]).vertex : g.dart(ds[0]).vertex;
}

inline orbikink::DartId dart_of(const RibbonGraph& g, EdgeId e, VertexId u) {
  for (auto d : g.darts_of(e)) {
    if (g.dart(d).vertex == u) return d;
  }
  throw std::logic_error("edge not at vertex");
}

inline std::vector<VertexId> vertices(const RibbonGraph& g, VertexId start, const Word& w) {
  std::vector<VertexId> out{start};
  for (EdgeId e : w) out.push_back(across(g, e, out.back()));
  return out;
}

// '+' when e_{i+1} is the clockwise successor of e_i at the vertex between them.
inline std::string signs(const RibbonGraph& g, VertexId start, const Word& w) {
  const auto vs = vertices(g, start, w);
  std::string s;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const auto next = g.next_around(dart_of(g, w[i], vs[i + 1]));
    s += g.dart(next).edge == w[i + 1] ? '+' : '-';
  }
  return s;
}

// Every way of deleting immediate backtracks, in every order. A loop-free
// graph has no other cancellations.
inline void reductions(const Word& w, std::set<Word>& seen, std::set<Word>& terminal) {
  if (!seen.insert(w).second) return;
  bool any = false;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] != w[i + 1]) continue;
    any = true;
    Word next(w.begin(), w.begin() + i);
    next.insert(next.end(), w.begin() + i + 2, w.end());
    reductions(next, seen, terminal);
  }
  if (!any) terminal.insert(w);
}

inline std::set<Word> free_reductions(const Word& w) {
  std::set<Word> seen;
  std::set<Word> terminal;
  reductions(w, seen, terminal);
  return terminal;
}

struct Found {
  std::size_t j, m, r, multiplicity;
};

// 1-based indices, literal reading of the definition.
inline std::vector<Found> kinks(const LeafyDualGraph& g, VertexId start, const Word& w) {
  const std::string sg = signs(g.graph, start, w);
  const std::size_t n = w.size();
  auto e = [&](std::size_t i) { return w[i - 1]; };
  auto eps = [&](std::size_t i) { return sg[i - 1]; };
  auto eta = [&](EdgeId x) { return g.is_eta(x); };
  auto pair = [&](EdgeId a, EdgeId b) { return eta(a) && eta(b) && a != b && g.info(a).name == g.info(b).name; };
  std::vector<Found> out;
  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t m = j + 5; m <= n; m += 2) {
      const std::size_t r = (m - j - 3) / 2;
      if (pair(e(j + r + 1), e(j + r + 2))) {
        bool mirrored = true;
        for (std::size_t t = 1; t <= r; ++t) mirrored = mirrored && e(j + t) == e(m - t);
        if (mirrored && e(j + r) == e(j + r + 3) && !eta(e(j + r)) && eps(j) == eps(j + r + 1) &&
            eps(j + r + 1) == eps(m - 1))
          out.push_back({j, m, r, 1});
      }
      if (pair(e(j + 1), e(j + 2)) && e(j) == e(m) && !eta(e(j))) {
        bool run = true;
        for (std::size_t t = 0; t <= r; ++t) run = run && e(j + 1 + 2 * t) == e(j + 1) && e(j + 2 + 2 * t) == e(j + 2);
        if (run) out.push_back({j, m, r, r + 1});
      }
    }
  }
  return out;
}

// Fully resolves w in every possible order (every kink, every swap position
// of a higher-multiplicity core) and returns the kink-free end results.
// Throws if some swap admits two different free reductions.
inline std::set<Word> all_normal_forms(const LeafyDualGraph& g, VertexId start, const Word& w,
                                       std::map<Word, std::set<Word>>& memo) {
  if (auto it = memo.find(w); it != memo.end()) return it->second;
  std::set<Word> out;
  const auto found = kinks(g, start, w);
  if (found.empty()) out.insert(w);
  for (const Found& k : found) {
    std::vector<std::size_t> swaps;
    if (k.multiplicity == 1) {
      swaps.push_back(k.j + k.r + 1);
    } else {
      for (std::size_t s = k.j + 1; s + 1 <= k.m - 1; ++s) swaps.push_back(s);
    }
    for (std::size_t s : swaps) {
      Word swapped = w;
      std::swap(swapped[s - 1], swapped[s]);
      const auto reduced = free_reductions(swapped);
      if (reduced.size() != 1) throw std::logic_error("free reduction is not unique");
      for (const Word& nf : all_normal_forms(g, start, *reduced.begin(), memo)) out.insert(nf);
    }
  }
  memo.emplace(w, out);
  return out;
}

inline std::set<Word> all_normal_forms(const LeafyDualGraph& g, VertexId start, const Word& w) {
  std::map<Word, std::set<Word>> memo;
  return all_normal_forms(g, start, w, memo);
}

}  // namespace oracle
