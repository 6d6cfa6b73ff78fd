#include "domination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"
#include "lp.hpp"

namespace gb {

namespace {

void require_coverable(const DirectedGraph& g) {
  for (int j : self_loop_free_set(g)) {
    if (g.in_degree(j) == 0) {
      throw BadInput("covering LP infeasible: vertex " + std::to_string(j) +
                     " has no self-loop and no in-neighbor");
    }
  }
}

std::vector<char> u_mask(const DirectedGraph& g) {
  std::vector<char> mask(g.vertex_count(), 0);
  for (int v : self_loop_free_set(g)) mask[v] = 1;
  return mask;
}

}  // namespace

bool primal_feasible(const DirectedGraph& g, std::span<const double> x, double tol) {
  if (static_cast<int>(x.size()) != g.vertex_count()) return false;
  for (double xi : x) {
    if (!(xi >= -tol) || !(xi <= 1.0 + tol)) return false;
  }
  for (int j : self_loop_free_set(g)) {
    double covered = 0.0;
    for (int i : g.in_neighbors(j)) covered += x[i];
    if (covered < 1.0 - tol) return false;
  }
  return true;
}

bool dual_feasible(const DirectedGraph& g, std::span<const double> y, double tol) {
  if (static_cast<int>(y.size()) != g.vertex_count()) return false;
  const auto in_u = u_mask(g);
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!(y[v] >= -tol) || !(y[v] <= 1.0 + tol)) return false;
    if (!in_u[v] && std::fabs(y[v]) > tol) return false;
  }
  for (int i = 0; i < g.vertex_count(); ++i) {
    double load = 0.0;
    for (int j : g.out_neighbors(i)) {
      if (in_u[j]) load += y[j];
    }
    if (load > 1.0 + tol) return false;
  }
  return true;
}

DominationSolution solve_primal(const DirectedGraph& g) {
  require_coverable(g);
  const int n = g.vertex_count();
  const auto u_set = self_loop_free_set(g);

  LpProblem lp;
  lp.sense = LpSense::Minimize;
  lp.objective.assign(n, 1.0);
  for (int j : u_set) {
    LpRow row;
    row.coeffs.assign(n, 0.0);
    for (int i : g.in_neighbors(j)) row.coeffs[i] = 1.0;
    row.sense = RowSense::GreaterEqual;
    row.rhs = 1.0;
    lp.rows.push_back(std::move(row));
  }
  for (int i = 0; i < n; ++i) {
    LpRow row;
    row.coeffs.assign(n, 0.0);
    row.coeffs[i] = 1.0;
    row.sense = RowSense::LessEqual;
    row.rhs = 1.0;
    lp.rows.push_back(std::move(row));
  }

  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) {
    throw ContractViolation("covering LP did not solve to optimality");
  }
  for (double& xi : sol.x) xi = std::max(xi, 0.0);

  // Nudge ulp-level constraint slack away so that downstream bounds that rely
  // on exact coverage (observation probability >= gamma / delta*) hold.
  double min_cover = std::numeric_limits<double>::infinity();
  for (int j : u_set) {
    double covered = 0.0;
    for (int i : g.in_neighbors(j)) covered += sol.x[i];
    min_cover = std::min(min_cover, covered);
  }
  if (!u_set.empty() && min_cover < 1.0) {
    if (min_cover < 1.0 - kLpTolerance) {
      throw ContractViolation("covering LP solution failed feasibility re-check");
    }
    for (double& xi : sol.x) xi /= min_cover;
  }
  if (!primal_feasible(g, sol.x, kLpTolerance)) {
    throw ContractViolation("covering LP solution failed feasibility re-check");
  }

  DominationSolution out;
  out.x = std::move(sol.x);
  out.value = 0.0;
  for (double xi : out.x) out.value += xi;
  return out;
}

PackingSolution solve_dual(const DirectedGraph& g) {
  const int n = g.vertex_count();
  const auto u_set = self_loop_free_set(g);
  const int m = static_cast<int>(u_set.size());
  std::vector<int> var_of(n, -1);
  for (int k = 0; k < m; ++k) var_of[u_set[k]] = k;

  PackingSolution out;
  out.y.assign(n, 0.0);
  out.integral = false;
  if (m == 0) return out;

  LpProblem lp;
  lp.sense = LpSense::Maximize;
  lp.objective.assign(m, 1.0);
  for (int i = 0; i < n; ++i) {
    bool nonempty = false;
    LpRow row;
    row.coeffs.assign(m, 0.0);
    for (int j : g.out_neighbors(i)) {
      if (var_of[j] >= 0) {
        row.coeffs[var_of[j]] = 1.0;
        nonempty = true;
      }
    }
    if (!nonempty) continue;
    row.sense = RowSense::LessEqual;
    row.rhs = 1.0;
    lp.rows.push_back(std::move(row));
  }
  for (int k = 0; k < m; ++k) {
    LpRow row;
    row.coeffs.assign(m, 0.0);
    row.coeffs[k] = 1.0;
    row.sense = RowSense::LessEqual;
    row.rhs = 1.0;
    lp.rows.push_back(std::move(row));
  }

  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) {
    throw ContractViolation("packing LP did not solve to optimality");
  }

  double worst_load = 0.0;
  for (int i = 0; i < n; ++i) {
    double load = 0.0;
    for (int j : g.out_neighbors(i)) {
      if (var_of[j] >= 0) load += sol.x[var_of[j]];
    }
    worst_load = std::max(worst_load, load);
  }
  double scale = 1.0;
  if (worst_load > 1.0) {
    if (worst_load > 1.0 + kLpTolerance) {
      throw ContractViolation("packing LP solution failed feasibility re-check");
    }
    scale = 1.0 / worst_load;
  }
  for (int k = 0; k < m; ++k) {
    out.y[u_set[k]] = std::clamp(sol.x[k] * scale, 0.0, 1.0);
  }
  if (!dual_feasible(g, out.y, kLpTolerance)) {
    throw ContractViolation("packing LP solution failed feasibility re-check");
  }
  out.value = 0.0;
  for (double yj : out.y) out.value += yj;
  return out;
}

// ---------------------------------------------------------------------------
// Integral optima

namespace {

constexpr int64_t kEnumerationBudget = 30'000'000;

// Minimum cover by increasing-size enumeration with bitmask coverage when the
// graph fits in 64 bits. Returns nullopt when the budget runs out.
std::optional<std::vector<int>> min_cover_enumerate(const DirectedGraph& g) {
  const int n = g.vertex_count();
  if (n > 64) return std::nullopt;
  uint64_t target = 0;
  for (int v : self_loop_free_set(g)) target |= uint64_t{1} << v;
  if (target == 0) return std::vector<int>{};

  std::vector<uint64_t> covers(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j : g.out_neighbors(i)) {
      if (target >> j & 1) covers[i] |= uint64_t{1} << j;
    }
  }

  int64_t steps = 0;
  std::vector<int> chosen;
  std::vector<int> best;
  // Depth-first over combinations of exactly `size` vertices, lowest indices
  // first, so the first hit at the minimum size is deterministic.
  auto dfs = [&](auto&& self, int next, int remaining, uint64_t covered) -> bool {
    if (++steps > kEnumerationBudget) return false;
    if ((covered & target) == target) {
      best = chosen;
      return true;
    }
    if (remaining == 0) return false;
    for (int i = next; i <= n - remaining; ++i) {
      if ((covers[i] | covered) == covered) continue;  // adds nothing
      chosen.push_back(i);
      if (self(self, i + 1, remaining - 1, covered | covers[i])) return true;
      chosen.pop_back();
      if (steps > kEnumerationBudget) return false;
    }
    return false;
  };

  for (int size = 1; size <= n; ++size) {
    chosen.clear();
    if (dfs(dfs, 0, size, 0)) return best;
    if (steps > kEnumerationBudget) return std::nullopt;
  }
  return std::nullopt;  // uncoverable; callers pre-check
}

std::vector<int> greedy_cover(const DirectedGraph& g) {
  const int n = g.vertex_count();
  const auto in_u = u_mask(g);
  std::vector<char> covered(n, 0);
  int uncovered = 0;
  for (int v = 0; v < n; ++v) uncovered += in_u[v] ? 1 : 0;

  std::vector<int> set;
  while (uncovered > 0) {
    int best = -1, best_gain = 0;
    for (int i = 0; i < n; ++i) {
      int gain = 0;
      for (int j : g.out_neighbors(i)) {
        if (in_u[j] && !covered[j]) ++gain;
      }
      if (gain > best_gain) {
        best = i;
        best_gain = gain;
      }
    }
    if (best < 0) throw BadInput("covering problem infeasible");
    set.push_back(best);
    for (int j : g.out_neighbors(best)) {
      if (in_u[j] && !covered[j]) {
        covered[j] = 1;
        --uncovered;
      }
    }
  }
  std::sort(set.begin(), set.end());
  return set;
}

struct PackingSearch {
  const DirectedGraph& g;
  std::vector<int> candidates;  // U ascending
  std::vector<int> load;        // per-vertex out-neighbor count in the chosen set
  std::vector<int> chosen, best;
  int64_t steps = 0;
  bool budget_hit = false;

  explicit PackingSearch(const DirectedGraph& graph)
      : g(graph), candidates(self_loop_free_set(graph)), load(graph.vertex_count(), 0) {}

  bool can_add(int j) const {
    for (int i : g.in_neighbors(j)) {
      if (load[i] >= 1) return false;
    }
    return true;
  }

  void dfs(size_t idx) {
    if (++steps > kEnumerationBudget) {
      budget_hit = true;
      return;
    }
    if (chosen.size() + (candidates.size() - idx) <= best.size()) return;
    if (idx == candidates.size()) {
      if (chosen.size() > best.size()) best = chosen;
      return;
    }
    const int j = candidates[idx];
    if (can_add(j)) {
      chosen.push_back(j);
      for (int i : g.in_neighbors(j)) ++load[i];
      dfs(idx + 1);
      for (int i : g.in_neighbors(j)) --load[i];
      chosen.pop_back();
      if (budget_hit) return;
    }
    dfs(idx + 1);
  }
};

std::vector<int> greedy_packing(const DirectedGraph& g) {
  std::vector<int> load(g.vertex_count(), 0);
  std::vector<int> set;
  for (int j : self_loop_free_set(g)) {
    bool ok = true;
    for (int i : g.in_neighbors(j)) {
      if (load[i] >= 1) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    set.push_back(j);
    for (int i : g.in_neighbors(j)) ++load[i];
  }
  return set;
}

}  // namespace

IntegralCover integral_delta(const DirectedGraph& g) {
  require_coverable(g);
  IntegralCover out;
  if (auto exact = min_cover_enumerate(g)) {
    out.set = std::move(*exact);
    out.exact = true;
  } else {
    out.set = greedy_cover(g);
    out.exact = false;
  }
  out.value = static_cast<int>(out.set.size());
  return out;
}

IntegralPacking integral_zeta(const DirectedGraph& g) {
  IntegralPacking out;
  PackingSearch search(g);
  search.dfs(0);
  if (search.budget_hit) {
    out.set = greedy_packing(g);
    out.exact = false;
  } else {
    out.set = std::move(search.best);
    out.exact = true;
  }
  out.value = static_cast<int>(out.set.size());
  return out;
}

GapReport gap_report(const DirectedGraph& g) {
  GapReport report;
  report.observability = classify(g);

  const PackingSolution dual = solve_dual(g);
  report.zeta_star = dual.value;
  const IntegralPacking zeta = integral_zeta(g);
  report.zeta = zeta.value;
  report.zeta_exact = zeta.exact;
  if (zeta.value > 0) report.dual_gap = dual.value / zeta.value;

  if (report.observability != Observability::NonObservable) {
    const DominationSolution primal = solve_primal(g);
    report.delta_star = primal.value;
    const IntegralCover delta = integral_delta(g);
    report.delta = delta.value;
    report.delta_exact = delta.exact;
    if (primal.value > 0.0) report.primal_gap = delta.value / primal.value;
    if (std::fabs(primal.value - dual.value) > kLpTolerance) {
      throw ContractViolation("strong duality violated: primal and dual optima differ");
    }
  }
  return report;
}

}  // namespace gb
