#include "orbikink/walk.hpp"

#include <algorithm>

#include "orbikink/errors.hpp"

namespace orbikink {

Walk identity_at(VertexId u) { return Walk{u, u, {}}; }

std::vector<VertexId> vertex_sequence(const RibbonGraph& g, VertexId start, std::span<const EdgeId> word) {
  std::vector<VertexId> out;
  out.reserve(word.size() + 1);
  out.push_back(start);
  for (EdgeId e : word) {
    const VertexId u = out.back();
    if (!g.incident(e, u)) {
      throw InputError("walk is not consecutive: edge " + g.label(e) + " does not touch " + g.label(u));
    }
    out.push_back(g.other_end(e, u));
  }
  return out;
}

std::vector<VertexId> vertex_sequence(const RibbonGraph& g, const Walk& w) {
  return vertex_sequence(g, w.start, w.edges);
}

bool is_backtrack_free(const Walk& w) {
  return std::adjacent_find(w.edges.begin(), w.edges.end()) == w.edges.end();
}

Walk standard_form(const RibbonGraph& g, VertexId start, std::span<const EdgeId> word) {
  Walk out{start, start, {}};
  out.edges.reserve(word.size());
  for (EdgeId e : word) {
    if (!g.incident(e, out.finish)) {
      throw InputError("walk is not consecutive: edge " + g.label(e) + " does not touch " +
                       g.label(out.finish));
    }
    out.finish = g.other_end(e, out.finish);
    if (!out.edges.empty() && out.edges.back() == e) {
      out.edges.pop_back();
    } else {
      out.edges.push_back(e);
    }
  }
  return out;
}

Walk compose(const Walk& f, const Walk& h) {
  if (f.finish != h.start) throw InputError("cannot compose walks: endpoint mismatch");
  // Both inputs are reduced, so cancellation only happens at the seam.
  std::size_t cancel = 0;
  while (cancel < f.edges.size() && cancel < h.edges.size() &&
         f.edges[f.edges.size() - 1 - cancel] == h.edges[cancel]) {
    ++cancel;
  }
  Walk out{f.start, h.finish, {}};
  out.edges.reserve(f.edges.size() + h.edges.size() - 2 * cancel);
  out.edges.insert(out.edges.end(), f.edges.begin(), f.edges.end() - static_cast<std::ptrdiff_t>(cancel));
  out.edges.insert(out.edges.end(), h.edges.begin() + static_cast<std::ptrdiff_t>(cancel), h.edges.end());
  return out;
}

Walk invert(const Walk& f) { return Walk{f.finish, f.start, {f.edges.rbegin(), f.edges.rend()}}; }

std::vector<TurnSign> sign_sequence(const RibbonGraph& g, const Walk& f) {
  std::vector<TurnSign> out;
  if (f.edges.size() < 2) return out;
  const auto vs = vertex_sequence(g, f);
  for (std::size_t j = 0; j + 1 < f.edges.size(); ++j) {
    out.push_back(turn_sign(g, f.edges[j], f.edges[j + 1], vs[j + 1]));
  }
  return out;
}

std::vector<TurnSign> closed_sign_sequence(const RibbonGraph& g, const Walk& f) {
  if (!f.is_loop() || f.edges.empty()) throw InputError("sign sequence of a closed walk needs a nonempty loop");
  std::vector<TurnSign> out = sign_sequence(g, f);
  out.push_back(turn_sign(g, f.edges.back(), f.edges.front(), f.finish));
  return out;
}

std::string sign_string(std::span<const TurnSign> signs) {
  std::string s;
  for (TurnSign t : signs) s += to_char(t);
  return s;
}

Walk rotate(const RibbonGraph& g, const Walk& closed, std::size_t k) {
  if (!closed.is_loop()) throw InputError("only closed walks can be rotated");
  if (closed.edges.empty()) return closed;
  k %= closed.edges.size();
  const auto vs = vertex_sequence(g, closed);
  Walk out{vs[k], vs[k], {}};
  out.edges.reserve(closed.edges.size());
  out.edges.insert(out.edges.end(), closed.edges.begin() + static_cast<std::ptrdiff_t>(k), closed.edges.end());
  out.edges.insert(out.edges.end(), closed.edges.begin(), closed.edges.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

Walk cyclic_reduce(const RibbonGraph& g, const Walk& closed) {
  if (!closed.is_loop()) throw InputError("cyclic reduction needs a closed walk");
  Walk w = standard_form(g, closed.start, closed.edges);
  std::size_t lo = 0;
  std::size_t hi = w.edges.size();
  VertexId base = w.start;
  while (hi - lo >= 2 && w.edges[lo] == w.edges[hi - 1]) {
    base = g.other_end(w.edges[lo], base);
    ++lo;
    --hi;
  }
  return Walk{base, base, {w.edges.begin() + static_cast<std::ptrdiff_t>(lo),
                           w.edges.begin() + static_cast<std::ptrdiff_t>(hi)}};
}

ClosedWalkClass canonical_closed(const RibbonGraph& g, const Walk& f) {
  const Walk w = cyclic_reduce(g, f);
  if (w.edges.empty()) throw Contractible();
  const auto vs = vertex_sequence(g, w);
  const std::size_t n = w.edges.size();
  // Least rotation by direct comparison; walks here are short enough.
  std::size_t best = 0;
  auto less = [&](std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < n; ++i) {
      const EdgeId x = w.edges[(a + i) % n];
      const EdgeId y = w.edges[(b + i) % n];
      if (x != y) return x < y;
    }
    return vs[a] < vs[b];
  };
  for (std::size_t k = 1; k < n; ++k) {
    if (less(k, best)) best = k;
  }
  ClosedWalkClass c;
  c.rep_ = rotate(g, w, best);
  return c;
}

ClosedWalkClass reversed(const RibbonGraph& g, const ClosedWalkClass& c) {
  return canonical_closed(g, invert(c.representative()));
}

ClosedWalkClass unoriented(const RibbonGraph& g, const ClosedWalkClass& c) {
  return std::min(c, reversed(g, c));
}

}  // namespace orbikink
