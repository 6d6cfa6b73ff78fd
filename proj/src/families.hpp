#pragma once

#include <string>
#include <vector>

#include "graph.hpp"

namespace gb {

// Undirected complete bipartite graph K_{a,b}: every cross pair as two arcs,
// no self-loops, no intra-side edges. Side one is 0..a-1.
DirectedGraph gen_complete_bipartite(int a, int b);

// Orthogonality graph over F_2^k (n = 2^{k+1} - 1): side one holds all of
// F_2^k as an undirected clique, side two holds the nonzero vectors as an
// independent set, with a cross edge iff the inner product over F_2 is 1.
DirectedGraph gen_orthogonal_f2k(int k);

// Named fixture catalogue (see catalogue() or the error message for names
// like "figure1", "directed_cycle:5", "complete_bipartite:2:3").
DirectedGraph gen_named(const std::string& name);

std::vector<std::string> graph_catalogue();

// Edge-triggered random graph: each base edge appears independently with its
// probability each round. Probabilities must lie in (0, 1].
struct ProbabilisticGraph {
  ProbabilisticGraph(DirectedGraph base_graph, std::vector<double> probabilities);

  DirectedGraph base;
  std::vector<double> edge_prob;  // aligned with base.edges()
};

}  // namespace gb
