#pragma once

// Internal working copy of a DirectedGraph supporting edge/vertex removal.
// Used by the degeneracy routines and by the rounding procedure; not part of
// the public surface.

#include <set>
#include <vector>

#include "graph.hpp"

namespace gb {

struct MutableGraph {
  int n = 0;
  std::vector<std::set<int>> in, out;
  std::vector<char> alive;
  int alive_count = 0;

  explicit MutableGraph(const DirectedGraph& g)
      : n(g.vertex_count()), in(n), out(n), alive(n, 1), alive_count(n) {
    for (const auto& [u, v] : g.edges()) {
      out[u].insert(v);
      in[v].insert(u);
    }
  }

  bool empty() const { return alive_count == 0; }
  int in_degree(int v) const { return static_cast<int>(in[v].size()); }
  int out_degree(int v) const { return static_cast<int>(out[v].size()); }
  bool has_edge(int u, int v) const { return out[u].count(v) > 0; }

  void remove_edge(int u, int v) {
    out[u].erase(v);
    in[v].erase(u);
  }

  void add_edge(int u, int v) {
    out[u].insert(v);
    in[v].insert(u);
  }

  // Requires the vertex to have no incident edges left.
  void remove_vertex(int v) {
    alive[v] = 0;
    --alive_count;
  }

  void restore_vertex(int v) {
    alive[v] = 1;
    ++alive_count;
  }
};

}  // namespace gb
