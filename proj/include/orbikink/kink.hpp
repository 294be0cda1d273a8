#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "orbikink/triangulation.hpp"
#include "orbikink/walk.hpp"

namespace orbikink {

// A kink occurrence (e_j, ..., e_m). Indices are 1-based positions in the
// walk; for closed walks they refer to the stored representative, j lies in
// 1..n and m may run past n (wrapping around).
struct Kink {
  std::size_t j = 0;
  std::size_t m = 0;
  std::size_t r = 0;
  std::size_t multiplicity = 0;
  std::string triangle;
  int eta_first = 0;   // i: index of e_{core_begin}
  int eta_second = 0;  // k
  std::size_t core_begin = 0;
  std::size_t core_end = 0;

  friend bool operator==(const Kink&, const Kink&) = default;
};

// Fault injection for mutation testing of the property suites.
struct KinkOptions {
  bool skip_sign_condition = false;
};

// Open walks must have both endpoints in G(tau) away from self-folded
// triangles (InputError otherwise). Sorted by (j, m).
std::vector<Kink> find_kinks(const LeafyDualGraph& g, const Walk& f, const KinkOptions& opt = {});
std::vector<Kink> find_kinks(const LeafyDualGraph& g, const ClosedWalkClass& f, const KinkOptions& opt = {});

std::size_t total_multiplicity(const std::vector<Kink>& kinks);

// swap_at is the 1-based index s of the swapped pair (s, s+1); it is ignored
// for multiplicity 1 and defaults to the first core position otherwise.
Walk resolve_kink(const LeafyDualGraph& g, const Walk& f, const Kink& k,
                  std::optional<std::size_t> swap_at = std::nullopt, const KinkOptions& opt = {});
ClosedWalkClass resolve_kink(const LeafyDualGraph& g, const ClosedWalkClass& f, const Kink& k,
                             std::optional<std::size_t> swap_at = std::nullopt, const KinkOptions& opt = {});

struct ResolutionStrategy {
  enum class Kind { leftmost_innermost, random };
  Kind kind = Kind::leftmost_innermost;
  std::uint64_t seed = 0;

  static ResolutionStrategy leftmost() { return {}; }
  static ResolutionStrategy random(std::uint64_t seed) { return {Kind::random, seed}; }
};

struct StepRecord {
  Kink kink;
  std::size_t swap_index = 0;
  std::size_t length_before = 0;
  std::size_t length_after = 0;
  std::size_t multiplicity_before = 0;
  std::size_t multiplicity_after = 0;
  // Multiplicity of the kink occupying the resolved core position afterwards.
  std::optional<std::size_t> kink_multiplicity_after;
  Walk result;  // representative after the step
};

using StepObserver = std::function<void(const StepRecord&)>;

// Resolves kinks until none are left. Throws std::logic_error if a step
// lengthens the walk or the resolution revisits a walk (a cycle). The closed
// version also cuts powers of a puncture loop down mod 2, throwing
// Contractible when nothing is left.
Walk normalize(const LeafyDualGraph& g, const Walk& f, const ResolutionStrategy& strategy = {},
               const StepObserver& observer = {}, const KinkOptions& opt = {});
ClosedWalkClass normalize(const LeafyDualGraph& g, const ClosedWalkClass& f,
                          const ResolutionStrategy& strategy = {}, const StepObserver& observer = {},
                          const KinkOptions& opt = {});

// Instance check for the confluence key lemma: f = (u0, e1, ..., en, v0) and
// h = (v0, en, ..., e2, d1, w0) with e1 != d1, and a kink of (e2, ..., en).
struct KeyLemmaReport {
  bool passed = false;
  std::string failure;
  Kink kink;                // kappa, indexed as in f
  Walk resolved_f;          // rho_kappa(f)
  Walk product;             // phi(rho_kappa(f) * h)
  std::optional<Kink> second_kink;  // kappa'
  Walk after_second;        // rho_kappa'(product)
  Walk direct;              // phi(f * h)
};

// kink_index selects among the kinks of (e2, ..., en); throws InputError if
// the hypotheses do not hold.
KeyLemmaReport check_key_lemma(const LeafyDualGraph& g, const Walk& f, const Walk& h, std::size_t kink_index = 0);

}  // namespace orbikink
