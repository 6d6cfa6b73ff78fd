#include "packing.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "errors.hpp"
#include "mutable_graph.hpp"

namespace gb {

namespace {

void check_vertices(const DirectedGraph& g, std::span<const int> s) {
  for (int v : s) {
    if (v < 0 || v >= g.vertex_count()) {
      throw BadInput("vertex " + std::to_string(v) + " out of range");
    }
  }
}

std::vector<char> u_mask(const DirectedGraph& g) {
  std::vector<char> mask(g.vertex_count(), 0);
  for (int v : self_loop_free_set(g)) mask[v] = 1;
  return mask;
}

}  // namespace

bool verify_k_packing(const DirectedGraph& g, std::span<const int> s, int k) {
  check_vertices(g, s);
  std::vector<char> member(g.vertex_count(), 0);
  for (int v : s) member[v] = 1;
  for (int v : s) {
    if (g.has_self_loop(v)) return false;
    for (int w : g.out_neighbors(v)) {
      if (member[w]) return false;  // includes nothing for w == v (no loop)
    }
  }
  for (int i = 0; i < g.vertex_count(); ++i) {
    int count = 0;
    for (int j : g.out_neighbors(i)) count += member[j];
    if (count > k) return false;
  }
  return true;
}

KPackingSet greedy_one_packing(const DirectedGraph& g, std::span<const int> packing_set) {
  check_vertices(g, packing_set);
  const auto in_u = u_mask(g);
  std::vector<char> member(g.vertex_count(), 0);
  for (int v : packing_set) {
    if (!in_u[v]) {
      throw BadInput("not a vertex packing set: vertex " + std::to_string(v) +
                     " has a self-loop");
    }
    member[v] = 1;
  }
  for (int i = 0; i < g.vertex_count(); ++i) {
    int count = 0;
    for (int j : g.out_neighbors(i)) count += member[j];
    if (count > 1) {
      throw BadInput("not a vertex packing set: vertex " + std::to_string(i) +
                     " has " + std::to_string(count) + " out-neighbors inside it");
    }
  }

  std::set<int> rest(packing_set.begin(), packing_set.end());
  KPackingSet result;
  result.k = 1;
  while (!rest.empty()) {
    int pick = -1, pick_in = 0;
    for (int v : rest) {
      int d = 0;
      for (int u : g.in_neighbors(v)) d += rest.count(u) > 0 ? 1 : 0;
      if (pick < 0 || d < pick_in) {
        pick = v;
        pick_in = d;
      }
    }
    result.vertices.push_back(pick);
    rest.erase(pick);
    for (int u : g.in_neighbors(pick)) rest.erase(u);
    for (int w : g.out_neighbors(pick)) rest.erase(w);
  }
  std::sort(result.vertices.begin(), result.vertices.end());
  return result;
}

PackingSolution degenerate_round(const DirectedGraph& g, const PackingSolution& fractional) {
  const int n = g.vertex_count();
  if (static_cast<int>(fractional.y.size()) != n) {
    throw BadInput("fractional solution size does not match the graph");
  }
  if (!dual_feasible(g, fractional.y, kLpTolerance)) {
    throw BadInput("input is not a feasible packing solution");
  }
  const auto res = degeneracy_certificate(g);
  if (res.status != DegeneracyStatus::Degenerate) {
    throw BadInput(res.status == DegeneracyStatus::NotDegenerate
                       ? "graph is not 1-degenerate"
                       : "could not certify 1-degeneracy");
  }

  const auto in_u = u_mask(g);
  MutableGraph m(g);
  std::vector<int8_t> assigned(n, -1);

  for (const auto& step : res.certificate->steps) {
    if (step.kind == DegeneracyStep::Kind::RemoveInEdge) {
      const auto [j, v] = *step.edge;
      if (m.in_degree(v) != 1 || !m.has_edge(j, v)) {
        throw ContractViolation("certificate replay mismatch");
      }
      if (in_u[v] && assigned[v] < 0) {
        assigned[v] = 1;
        // Zero the siblings sharing the in-neighbor j so j's constraint
        // cannot be violated by this assignment.
        for (int k : m.out[j]) {
          if (k == v || !in_u[k]) continue;
          if (assigned[k] == 1) throw ContractViolation("rounding produced a conflict");
          assigned[k] = 0;
        }
      }
      m.remove_edge(j, v);
    } else {
      if (step.edge) m.remove_edge(step.edge->first, step.edge->second);
      m.remove_vertex(step.vertex);
    }
  }

  // Vertices never reached by the in-edge rule kept their slack; take them
  // whenever the original constraints still allow it.
  for (int v = 0; v < n; ++v) {
    if (!in_u[v] || assigned[v] >= 0) continue;
    bool ok = true;
    for (int i : g.in_neighbors(v)) {
      int cnt = 0;
      for (int w : g.out_neighbors(i)) {
        if (in_u[w] && assigned[w] == 1) ++cnt;
      }
      if (cnt >= 1) {
        ok = false;
        break;
      }
    }
    assigned[v] = ok ? 1 : 0;
  }

  PackingSolution out;
  out.y.assign(n, 0.0);
  out.integral = true;
  for (int v = 0; v < n; ++v) {
    if (assigned[v] == 1) out.y[v] = 1.0;
  }
  out.value = 0.0;
  for (double yv : out.y) out.value += yv;

  if (!dual_feasible(g, out.y, 1e-12)) {
    throw ContractViolation("rounded solution is infeasible");
  }
  if (out.value < fractional.value - 1e-9) {
    throw ContractViolation("rounded value fell below the fractional value");
  }
  return out;
}

KPackingSet max_k_packing_bruteforce(const DirectedGraph& g, int k) {
  const int n = g.vertex_count();
  if (n > 20) throw BadInput("max_k_packing_bruteforce supports at most 20 vertices");
  if (k < 0) throw BadInput("k must be nonnegative");

  const auto candidates = self_loop_free_set(g);
  const int c = static_cast<int>(candidates.size());

  // Conflict masks over candidate indices (either direction kills independence).
  std::vector<int> cand_index(n, -1);
  for (int i = 0; i < c; ++i) cand_index[candidates[i]] = i;
  std::vector<uint32_t> conflict(c, 0);
  for (int i = 0; i < c; ++i) {
    const int v = candidates[i];
    for (int w : g.out_neighbors(v)) {
      if (cand_index[w] >= 0) conflict[i] |= uint32_t{1} << cand_index[w];
    }
    for (int w : g.in_neighbors(v)) {
      if (cand_index[w] >= 0) conflict[i] |= uint32_t{1} << cand_index[w];
    }
  }

  std::vector<int> load(n, 0);
  std::vector<int> chosen, best;
  uint32_t chosen_mask = 0;

  auto dfs = [&](auto&& self, int idx) -> void {
    if (chosen.size() + (c - idx) <= best.size()) return;
    if (idx == c) {
      if (chosen.size() > best.size()) best = chosen;
      return;
    }
    const int v = candidates[idx];
    bool ok = (conflict[idx] & chosen_mask) == 0;
    if (ok) {
      for (int i : g.in_neighbors(v)) {
        if (load[i] >= k) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      chosen.push_back(v);
      chosen_mask |= uint32_t{1} << idx;
      for (int i : g.in_neighbors(v)) ++load[i];
      self(self, idx + 1);
      for (int i : g.in_neighbors(v)) --load[i];
      chosen_mask &= ~(uint32_t{1} << idx);
      chosen.pop_back();
    }
    self(self, idx + 1);
  };
  dfs(dfs, 0);

  return {std::move(best), k};
}

}  // namespace gb
