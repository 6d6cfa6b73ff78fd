#include "graph.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "errors.hpp"
#include "mutable_graph.hpp"

namespace gb {

DirectedGraph::DirectedGraph(int vertex_count, std::vector<Edge> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
  if (n_ < 1) throw BadInput("vertex count must be positive");
  for (const auto& [u, v] : edges_) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) {
      throw BadInput("edge endpoint out of range [0, " + std::to_string(n_) + ")");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  for (size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i] == edges_[i - 1]) {
      throw BadInput("duplicate edge (" + std::to_string(edges_[i].first) + ", " +
                     std::to_string(edges_[i].second) + ")");
    }
  }

  in_off_.assign(n_ + 1, 0);
  out_off_.assign(n_ + 1, 0);
  for (const auto& [u, v] : edges_) {
    ++out_off_[u + 1];
    ++in_off_[v + 1];
  }
  for (int i = 0; i < n_; ++i) {
    in_off_[i + 1] += in_off_[i];
    out_off_[i + 1] += out_off_[i];
  }
  in_adj_.resize(edges_.size());
  out_adj_.resize(edges_.size());
  std::vector<int> in_pos(in_off_.begin(), in_off_.end() - 1);
  std::vector<int> out_pos(out_off_.begin(), out_off_.end() - 1);
  for (const auto& [u, v] : edges_) {
    out_adj_[out_pos[u]++] = v;
    in_adj_[in_pos[v]++] = u;
  }
  // edges_ is sorted by (u,v), so out lists are already ascending; in lists
  // are filled in ascending u as well.
}

std::span<const int> DirectedGraph::in_neighbors(int v) const {
  return {in_adj_.data() + in_off_[v], in_adj_.data() + in_off_[v + 1]};
}

std::span<const int> DirectedGraph::out_neighbors(int v) const {
  return {out_adj_.data() + out_off_[v], out_adj_.data() + out_off_[v + 1]};
}

int DirectedGraph::in_degree(int v) const { return in_off_[v + 1] - in_off_[v]; }
int DirectedGraph::out_degree(int v) const { return out_off_[v + 1] - out_off_[v]; }

bool DirectedGraph::has_edge(int u, int v) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

const char* to_string(Observability o) {
  switch (o) {
    case Observability::StronglyObservable: return "strongly_observable";
    case Observability::WeaklyObservable: return "weakly_observable";
    case Observability::NonObservable: return "non_observable";
  }
  return "?";
}

Observability classify(const DirectedGraph& g) {
  const int n = g.vertex_count();
  for (int v = 0; v < n; ++v) {
    if (g.in_degree(v) == 0) return Observability::NonObservable;
  }
  bool all_strong = true;
  for (int v = 0; v < n && all_strong; ++v) {
    const bool self = g.has_self_loop(v);
    const int others = g.in_degree(v) - (self ? 1 : 0);
    if (!self && others < n - 1) all_strong = false;
  }
  return all_strong ? Observability::StronglyObservable : Observability::WeaklyObservable;
}

std::vector<int> self_loop_free_set(const DirectedGraph& g) {
  std::vector<int> u;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!g.has_self_loop(v)) u.push_back(v);
  }
  return u;
}

// ---------------------------------------------------------------------------
// 1-degeneracy

namespace {

bool op1_applicable(const MutableGraph& m, int v) {
  return m.alive[v] && m.in_degree(v) == 1;
}

bool op2_applicable(const MutableGraph& m, int v) {
  return m.alive[v] && m.in_degree(v) == 0 && m.out_degree(v) <= 1;
}

DegeneracyStep apply_op1(MutableGraph& m, int v) {
  const int u = *m.in[v].begin();
  m.remove_edge(u, v);
  return {DegeneracyStep::Kind::RemoveInEdge, v, Edge{u, v}};
}

DegeneracyStep apply_op2(MutableGraph& m, int v) {
  std::optional<Edge> removed;
  if (m.out_degree(v) == 1) {
    const int w = *m.out[v].begin();
    m.remove_edge(v, w);
    removed = Edge{v, w};
  }
  m.remove_vertex(v);
  return {DegeneracyStep::Kind::RemoveVertex, v, removed};
}

void undo_step(MutableGraph& m, const DegeneracyStep& step) {
  if (step.kind == DegeneracyStep::Kind::RemoveVertex) {
    m.restore_vertex(step.vertex);
  }
  if (step.edge) m.add_edge(step.edge->first, step.edge->second);
}

std::string encode_state(const MutableGraph& m) {
  std::string key;
  key.reserve(static_cast<size_t>(m.n) * 4);
  for (int v = 0; v < m.n; ++v) {
    if (!m.alive[v]) continue;
    key.push_back(static_cast<char>(v + 1));
    for (int w : m.out[v]) key.push_back(static_cast<char>(-(w + 1)));
  }
  return key;
}

constexpr int64_t kSearchBudget = 4'000'000;

struct Searcher {
  MutableGraph m;
  std::vector<DegeneracyStep> path;
  std::unordered_set<std::string> dead;
  int64_t visited = 0;
  bool budget_hit = false;

  explicit Searcher(const DirectedGraph& g) : m(g) {}

  bool dfs() {
    if (m.empty()) return true;
    if (++visited > kSearchBudget) {
      budget_hit = true;
      return false;
    }
    const std::string key = encode_state(m);
    if (dead.count(key)) return false;
    for (int v = 0; v < m.n; ++v) {
      if (!op1_applicable(m, v)) continue;
      path.push_back(apply_op1(m, v));
      if (dfs()) return true;
      undo_step(m, path.back());
      path.pop_back();
      if (budget_hit) return false;
    }
    for (int v = 0; v < m.n; ++v) {
      if (!op2_applicable(m, v)) continue;
      path.push_back(apply_op2(m, v));
      if (dfs()) return true;
      undo_step(m, path.back());
      path.pop_back();
      if (budget_hit) return false;
    }
    dead.insert(key);
    return false;
  }
};

}  // namespace

std::optional<DegeneracyCertificate> degeneracy_greedy(const DirectedGraph& g) {
  MutableGraph m(g);
  DegeneracyCertificate cert;
  while (!m.empty()) {
    int pick = -1;
    for (int v = 0; v < m.n; ++v) {
      if (op1_applicable(m, v)) {
        pick = v;
        break;
      }
    }
    if (pick >= 0) {
      cert.steps.push_back(apply_op1(m, pick));
      continue;
    }
    for (int v = 0; v < m.n; ++v) {
      if (op2_applicable(m, v)) {
        pick = v;
        break;
      }
    }
    if (pick < 0) return std::nullopt;
    cert.steps.push_back(apply_op2(m, pick));
  }
  return cert;
}

DegeneracySearchResult degeneracy_search(const DirectedGraph& g) {
  if (g.vertex_count() > 20) {
    throw BadInput("degeneracy_search supports at most 20 vertices");
  }
  Searcher s(g);
  if (s.dfs()) {
    return {SearchOutcome::Found, DegeneracyCertificate{std::move(s.path)}};
  }
  return {s.budget_hit ? SearchOutcome::BudgetExceeded : SearchOutcome::Exhausted, std::nullopt};
}

DegeneracyResult degeneracy_certificate(const DirectedGraph& g) {
  if (auto cert = degeneracy_greedy(g)) {
    return {DegeneracyStatus::Degenerate, std::move(cert), true};
  }
  if (g.vertex_count() <= 20) {
    auto res = degeneracy_search(g);
    switch (res.outcome) {
      case SearchOutcome::Found:
        return {DegeneracyStatus::Degenerate, std::move(res.certificate), false};
      case SearchOutcome::Exhausted:
        return {DegeneracyStatus::NotDegenerate, std::nullopt, false};
      case SearchOutcome::BudgetExceeded:
        return {DegeneracyStatus::Unknown, std::nullopt, false};
    }
  }
  return {DegeneracyStatus::Unknown, std::nullopt, false};
}

const char* to_string(DegeneracyStatus s) {
  switch (s) {
    case DegeneracyStatus::Degenerate: return "yes";
    case DegeneracyStatus::NotDegenerate: return "no";
    case DegeneracyStatus::Unknown: return "unknown";
  }
  return "?";
}

bool certificate_empties(const DirectedGraph& g, const DegeneracyCertificate& cert) {
  MutableGraph m(g);
  for (const auto& step : cert.steps) {
    if (step.kind == DegeneracyStep::Kind::RemoveInEdge) {
      if (!op1_applicable(m, step.vertex)) return false;
      if (!step.edge || !m.has_edge(step.edge->first, step.edge->second)) return false;
      if (step.edge->second != step.vertex) return false;
      m.remove_edge(step.edge->first, step.edge->second);
    } else {
      if (!op2_applicable(m, step.vertex)) return false;
      if (m.out_degree(step.vertex) == 1) {
        if (!step.edge || step.edge->first != step.vertex) return false;
        if (!m.has_edge(step.edge->first, step.edge->second)) return false;
        m.remove_edge(step.edge->first, step.edge->second);
      } else if (step.edge) {
        return false;
      }
      m.remove_vertex(step.vertex);
    }
  }
  return m.empty();
}

// ---------------------------------------------------------------------------
// Text format

DirectedGraph parse_graph(const std::string& text) {
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  int n = -1;
  std::vector<Edge> edges;
  std::unordered_set<int64_t> seen;

  auto fail = [&](const std::string& what) -> void {
    throw BadInput("line " + std::to_string(line_no) + ": " + what);
  };

  while (std::getline(stream, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    std::istringstream tokens(line);
    if (n < 0) {
      std::string extra;
      if (!(tokens >> n) || (tokens >> extra)) fail("expected a single integer vertex count");
      if (n < 1) fail("vertex count must be positive");
      continue;
    }
    int u, v;
    std::string extra;
    if (!(tokens >> u >> v) || (tokens >> extra)) fail("expected an edge line 'u v'");
    if (u < 0 || u >= n) fail("vertex " + std::to_string(u) + " out of range [0, " + std::to_string(n) + ")");
    if (v < 0 || v >= n) fail("vertex " + std::to_string(v) + " out of range [0, " + std::to_string(n) + ")");
    if (!seen.insert(static_cast<int64_t>(u) * n + v).second) {
      fail("duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    }
    edges.emplace_back(u, v);
  }
  if (n < 0) throw BadInput("empty graph file: missing vertex count");
  return DirectedGraph(n, std::move(edges));
}

std::string serialize_graph(const DirectedGraph& g) {
  std::string out = std::to_string(g.vertex_count()) + "\n";
  for (const auto& [u, v] : g.edges()) {
    out += std::to_string(u) + " " + std::to_string(v) + "\n";
  }
  return out;
}

}  // namespace gb
