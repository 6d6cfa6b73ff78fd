#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gb {

using Edge = std::pair<int, int>;

// Directed feedback graph over vertices 0..n-1. Self-loops are allowed,
// multi-edges are rejected. Neighborhood lists are built once; instances are
// immutable after construction and safe to share across parallel runs.
class DirectedGraph {
 public:
  DirectedGraph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  int64_t edge_count() const { return static_cast<int64_t>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const int> in_neighbors(int v) const;
  std::span<const int> out_neighbors(int v) const;
  int in_degree(int v) const;
  int out_degree(int v) const;
  bool has_edge(int u, int v) const;
  bool has_self_loop(int v) const { return has_edge(v, v); }

  bool operator==(const DirectedGraph&) const = default;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;  // sorted, duplicate-free
  std::vector<int> in_off_, in_adj_;
  std::vector<int> out_off_, out_adj_;
};

enum class Observability { StronglyObservable, WeaklyObservable, NonObservable };

const char* to_string(Observability o);

// Non-observable iff some vertex has an empty in-neighborhood; strongly
// observable iff every vertex has a self-loop or is seen by all other
// vertices; weakly observable otherwise.
Observability classify(const DirectedGraph& g);

// U: the vertices without a self-loop, ascending.
std::vector<int> self_loop_free_set(const DirectedGraph& g);

// ---------------------------------------------------------------------------
// 1-degeneracy. A graph is 1-degenerate when it can be emptied by repeatedly
// either removing the in-edge of an in-degree-one vertex or removing a vertex
// of in-degree zero together with its at-most-one out-edge.

struct DegeneracyStep {
  enum class Kind { RemoveInEdge, RemoveVertex };
  Kind kind;
  int vertex;
  std::optional<Edge> edge;  // removed in-edge, or the removed out-edge if any

  bool operator==(const DegeneracyStep&) const = default;
};

struct DegeneracyCertificate {
  std::vector<DegeneracyStep> steps;
};

enum class DegeneracyStatus { Degenerate, NotDegenerate, Unknown };

const char* to_string(DegeneracyStatus s);

struct DegeneracyResult {
  DegeneracyStatus status = DegeneracyStatus::Unknown;
  std::optional<DegeneracyCertificate> certificate;
  // False when only the backtracking search found a certificate, i.e. the
  // deterministic greedy order got stuck on a reducible graph.
  bool greedy_sufficed = false;
};

// Deterministic greedy reduction: always apply the in-edge removal on the
// lowest applicable vertex, falling back to vertex removal on the lowest
// applicable vertex. Returns nullopt when it gets stuck.
std::optional<DegeneracyCertificate> degeneracy_greedy(const DirectedGraph& g);

enum class SearchOutcome { Found, Exhausted, BudgetExceeded };

struct DegeneracySearchResult {
  SearchOutcome outcome;
  std::optional<DegeneracyCertificate> certificate;
};

// Exhaustive backtracking over all operation orders (vertex_count <= 20).
// Exhausted means no sequence of operations empties the graph.
DegeneracySearchResult degeneracy_search(const DirectedGraph& g);

// Greedy first; on failure, full search for small graphs. Unknown is reported
// when greedy fails and the graph is too large to search.
DegeneracyResult degeneracy_certificate(const DirectedGraph& g);

// Replays a certificate on a fresh copy, verifying each step's precondition.
// True iff every step was legal and the graph ends empty.
bool certificate_empties(const DirectedGraph& g, const DegeneracyCertificate& cert);

// ---------------------------------------------------------------------------
// Text format: first line "n", then one "u v" edge per line, 0-indexed.
// Lines beginning with '#' are comments. Duplicate edges are rejected.

DirectedGraph parse_graph(const std::string& text);
std::string serialize_graph(const DirectedGraph& g);

}  // namespace gb
