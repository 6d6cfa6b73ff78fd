#include "families.hpp"

#include <bit>
#include <sstream>

#include "errors.hpp"
#include "rng.hpp"

namespace gb {

DirectedGraph gen_complete_bipartite(int a, int b) {
  if (a < 1 || b < 1) throw BadInput("complete bipartite sides must be positive");
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(a) * b * 2);
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) {
      edges.emplace_back(i, a + j);
      edges.emplace_back(a + j, i);
    }
  }
  return DirectedGraph(a + b, std::move(edges));
}

DirectedGraph gen_orthogonal_f2k(int k) {
  if (k < 2 || k > 12) throw BadInput("orthogonal family needs 2 <= k <= 12");
  const int side1 = 1 << k;          // vectors alpha in F_2^k, vertex id = alpha
  const int side2 = side1 - 1;       // nonzero beta, vertex id = side1 + beta - 1
  std::vector<Edge> edges;
  for (int x = 0; x < side1; ++x) {
    for (int y = 0; y < side1; ++y) {
      if (x != y) edges.emplace_back(x, y);  // clique on side one
    }
  }
  for (int alpha = 0; alpha < side1; ++alpha) {
    for (int beta = 1; beta <= side2; ++beta) {
      if (std::popcount(static_cast<unsigned>(alpha & beta)) % 2 == 1) {
        const int yv = side1 + beta - 1;
        edges.emplace_back(alpha, yv);
        edges.emplace_back(yv, alpha);
      }
    }
  }
  return DirectedGraph(side1 + side2, std::move(edges));
}

namespace {

DirectedGraph figure1() {
  // A=0, B=1, C=2, D=3: self-loops on A and B, A->C, B->C, C<->D.
  return DirectedGraph(4, {{0, 0}, {1, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 2}});
}

DirectedGraph directed_cycle(int n) {
  if (n < 2) throw BadInput("cycle needs at least 2 vertices");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return DirectedGraph(n, std::move(edges));
}

DirectedGraph undirected_cycle(int n) {
  if (n < 3) throw BadInput("undirected cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    edges.emplace_back(i, (i + 1) % n);
    edges.emplace_back((i + 1) % n, i);
  }
  return DirectedGraph(n, std::move(edges));
}

DirectedGraph directed_path(int n) {
  if (n < 2) throw BadInput("path needs at least 2 vertices");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return DirectedGraph(n, std::move(edges));
}

DirectedGraph out_star(int m) {
  if (m < 1) throw BadInput("star needs at least one leaf");
  std::vector<Edge> edges;
  for (int i = 1; i <= m; ++i) edges.emplace_back(0, i);
  return DirectedGraph(m + 1, std::move(edges));
}

DirectedGraph in_star(int m) {
  if (m < 1) throw BadInput("star needs at least one leaf");
  std::vector<Edge> edges;
  for (int i = 1; i <= m; ++i) edges.emplace_back(i, 0);
  return DirectedGraph(m + 1, std::move(edges));
}

// m disjoint pairs: guard 2i carries a self-loop and points at target 2i+1.
// The targets form a 1-packing independent set of size m and the covering LP
// optimum is exactly m, which makes this the canonical hard-instance carrier.
DirectedGraph dominated_matching(int m) {
  if (m < 1) throw BadInput("matching needs at least one pair");
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) {
    edges.emplace_back(2 * i, 2 * i);
    edges.emplace_back(2 * i, 2 * i + 1);
  }
  return DirectedGraph(2 * m, std::move(edges));
}

// Random arborescence with edges parent -> child.
DirectedGraph directed_tree(int n, uint64_t seed) {
  if (n < 2) throw BadInput("tree needs at least 2 vertices");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(rng.uniform_int(0, i - 1), i);
  return DirectedGraph(n, std::move(edges));
}

}  // namespace

std::vector<std::string> graph_catalogue() {
  return {
      "figure1",
      "directed_cycle:<n>",
      "undirected_cycle:<n>",
      "directed_path:<n>",
      "directed_tree:<n>:<seed>",
      "out_star:<leaves>",
      "in_star:<leaves>",
      "dominated_matching:<pairs>",
      "complete_bipartite:<a>:<b>",
      "orthogonal_f2k:<k>",
  };
}

DirectedGraph gen_named(const std::string& name) {
  std::vector<std::string> parts;
  std::stringstream ss(name);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);

  auto arg = [&](size_t idx) -> long long {
    if (idx >= parts.size()) throw BadInput("graph name '" + name + "' is missing an argument");
    try {
      return std::stoll(parts[idx]);
    } catch (const std::exception&) {
      throw BadInput("graph name '" + name + "' has a non-numeric argument");
    }
  };

  const std::string& kind = parts.empty() ? name : parts[0];
  if (kind == "figure1") return figure1();
  if (kind == "directed_cycle") return directed_cycle(static_cast<int>(arg(1)));
  if (kind == "undirected_cycle") return undirected_cycle(static_cast<int>(arg(1)));
  if (kind == "directed_path") return directed_path(static_cast<int>(arg(1)));
  if (kind == "directed_tree")
    return directed_tree(static_cast<int>(arg(1)), static_cast<uint64_t>(arg(2)));
  if (kind == "out_star") return out_star(static_cast<int>(arg(1)));
  if (kind == "in_star") return in_star(static_cast<int>(arg(1)));
  if (kind == "dominated_matching") return dominated_matching(static_cast<int>(arg(1)));
  if (kind == "complete_bipartite")
    return gen_complete_bipartite(static_cast<int>(arg(1)), static_cast<int>(arg(2)));
  if (kind == "orthogonal_f2k") return gen_orthogonal_f2k(static_cast<int>(arg(1)));

  std::string known;
  for (const auto& entry : graph_catalogue()) known += "\n  " + entry;
  throw BadInput("unknown graph name '" + name + "'; catalogue:" + known);
}

ProbabilisticGraph::ProbabilisticGraph(DirectedGraph base_graph, std::vector<double> probabilities)
    : base(std::move(base_graph)), edge_prob(std::move(probabilities)) {
  if (edge_prob.size() != base.edges().size()) {
    throw BadInput("edge probability list does not match the edge set");
  }
  for (double p : edge_prob) {
    if (!(p > 0.0) || !(p <= 1.0)) {
      throw BadInput("edge probabilities must lie in (0, 1]");
    }
  }
}

}  // namespace gb
