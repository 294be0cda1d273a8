#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbikink/kink.hpp"

namespace orbikink {

struct SelftestConfig {
  std::uint64_t seed = 42;
  unsigned jobs = 1;
  KinkOptions kink;       // fault injection, used by the confluence suite
  std::size_t pool = 20;  // random triangulations shared by the suites
};

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string stats;                         // free-form counters, e.g. steps per multiplicity
  std::optional<std::string> counterexample;  // JSON object, first (shrunk) failure
  double seconds = 0;

  bool passed() const { return failures == 0; }
};

// Kink-free representatives of order-two classes look like c (eta_i eta_k) c^-1.
bool looks_order_two(const LeafyDualGraph& g, const Walk& nf);

// Random walks normalized under several random strategies. Returns three
// results: agreement of the normal forms, the per-step length/multiplicity
// drop rules, and strict decrease of total multiplicity.
std::vector<SuiteResult> confluence_suite(const SelftestConfig& cfg, std::size_t walks, std::size_t strategies);

// Products of conjugated squares reduce to the identity; kink-free
// non-identity walks do not.
SuiteResult k_membership_suite(const SelftestConfig& cfg, std::size_t products, std::size_t kink_free);

// iota(f) is kink-free, orbifold-equal to f and a fixed point of iota.
SuiteResult section_suite(const SelftestConfig& cfg, std::size_t walks);

// Generators have order two; random loops agree with the structural oracle.
SuiteResult order_two_suite(const SelftestConfig& cfg, std::size_t generators, std::size_t loops);

// Transport round trip, kink presence and orbifold equality across a flip.
SuiteResult flip_suite(const SelftestConfig& cfg, std::size_t triples);

SuiteResult key_lemma_suite(const SelftestConfig& cfg, std::size_t instances);

// Every suite, sized from `cases` (0 runs nothing).
std::vector<SuiteResult> run_selftest(const SelftestConfig& cfg, std::size_t cases);

}  // namespace orbikink
