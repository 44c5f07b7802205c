#pragma once

#include <cstdint>
#include <random>

#include "dilator/dendrogram.hpp"
#include "dilator/predilator.hpp"

namespace dilator {

// Deterministic across platforms: only raw engine output is used.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  int below(int n) { return n <= 0 ? 0 : static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }
  int between(int lo, int hi) { return lo + below(hi - lo + 1); }
  bool chance(int percent) { return below(100) < percent; }
  std::uint64_t next() { return engine_(); }

private:
  std::mt19937_64 engine_;
};

// Valid by construction: adjacent distances in term order, Σ built from e-codes
// that agree below the distance.
Predilator random_predilator(Rng& rng, int max_terms, int max_arity, int min_terms = 0);
// Random forest with at most max_nodes nodes and random e-codes; sibling order random.
Dendrogram random_dendrogram(Rng& rng, int max_nodes, int min_nodes = 1);
// Random dendrogram relabelled along a random traversal respecting parent and sibling order.
Dendrogram random_trekkable(Rng& rng, int max_nodes, int min_nodes = 1);

}  // namespace dilator
