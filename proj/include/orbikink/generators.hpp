#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "orbikink/flip.hpp"
#include "orbikink/triangulation.hpp"
#include "orbikink/walk.hpp"

namespace orbikink {

// All generators draw from this engine only, so a seed fixes every output.
using Rng = std::mt19937_64;
inline constexpr const char* kRngName = "mt19937_64";

struct TriangulationParams {
  int max_triangles = 12;  // self-folded ones included
  int max_punctures = 4;
  bool allow_extra_gluing = true;  // glue free sides together (annuli, genus)
};

// A random valid signature-zero triangulation with at least one boundary
// segment. Triangles are T#/V#, arcs x#, radii r#, segments s#.
Triangulation random_triangulation(Rng& rng, const TriangulationParams& params = {});

struct WalkParams {
  std::size_t max_length = 200;
  double detour_rate = 0.25;  // chance per step of a trip around a puncture
};

// Vertices of G(tau) inside the leafy graph (segments, ordinary triangles).
std::vector<VertexId> regular_vertices(const LeafyDualGraph& g);

// Shortest walk from u to v avoiding eta and leaf edges, ties broken at
// random. Nullopt if v is unreachable that way.
std::optional<Walk> random_path(const LeafyDualGraph& g, Rng& rng, VertexId u, VertexId v);

// Standard-form walk from `from` to a random member of `targets`, built from
// non-backtracking steps (never on leaves) mixed with detours that wind
// around punctures. Length stays within params.max_length.
Walk random_walk(const LeafyDualGraph& g, Rng& rng, VertexId from, std::span<const VertexId> targets,
                 const WalkParams& params = {});

// A closed walk through `base` with nonempty cyclic reduction, or nullopt if
// the graph has no cycles at all.
std::optional<Walk> random_closed_walk(const LeafyDualGraph& g, Rng& rng, VertexId base, const WalkParams& params = {});

// c * (eta1 eta2)^2 * c^-1 for a random cluster and random c from u.
Walk conjugated_square(const LeafyDualGraph& g, Rng& rng, VertexId u, const WalkParams& params = {});

// A random generator loop_generator(u, v, c) with its ingredients.
struct GeneratorSample {
  std::string cluster;
  Walk conjugator;
  Walk generator;
};
GeneratorSample random_generator(const LeafyDualGraph& g, Rng& rng, VertexId u, const WalkParams& params = {});

// A random move applicable to t, if any.
std::optional<FlipMove> random_move(const Triangulation& t, Rng& rng);

// (f, h) satisfying the hypotheses of check_key_lemma, or nullopt after a
// bounded number of failed attempts.
struct KeyLemmaInstance {
  Walk f;
  Walk h;
};
std::optional<KeyLemmaInstance> random_key_lemma_instance(const LeafyDualGraph& g, Rng& rng,
                                                          const WalkParams& params = {});

}  // namespace orbikink
