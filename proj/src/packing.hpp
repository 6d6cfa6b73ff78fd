#pragma once

#include <span>
#include <vector>

#include "domination.hpp"
#include "graph.hpp"

namespace gb {

// Independent set S such that every vertex has at most k out-neighbors in S.
// Independence excludes self-looped vertices by convention.
struct KPackingSet {
  std::vector<int> vertices;
  int k = 1;
};

bool verify_k_packing(const DirectedGraph& g, std::span<const int> s, int k);

// Greedy extraction of a 1-packing independent set H from a vertex packing
// set: repeatedly take the member with the fewest in-neighbors inside the
// remainder (ties: lowest index) and drop its neighborhood. Guarantees
// |H| >= ceil(|S|/3). Throws BadInput when S is not a vertex packing set.
KPackingSet greedy_one_packing(const DirectedGraph& g, std::span<const int> packing_set);

// Rounds a feasible fractional packing solution to an integral one of no
// smaller value on a 1-degenerate graph, certifying integrality gap 1.
PackingSolution degenerate_round(const DirectedGraph& g, const PackingSolution& fractional);

// Maximum k-packing independent set by exhaustive search (n <= 20).
KPackingSet max_k_packing_bruteforce(const DirectedGraph& g, int k);

}  // namespace gb
