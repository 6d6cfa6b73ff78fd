#include "lp.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace gb {

namespace {

using Real = long double;

constexpr Real kReducedCostEps = 1e-9L;
constexpr Real kPivotEps = 1e-11L;
constexpr Real kPhase1Tol = 1e-7L;
constexpr int kMaxIterations = 200000;

// The tableau stores B^{-1}A column-wise per row plus the transformed rhs.
// Reduced costs are recomputed from the cost vector and the current basis at
// every iteration, which avoids drift in the objective row.
struct Tableau {
  int rows = 0;
  int cols = 0;  // variables only; rhs kept separately
  std::vector<std::vector<Real>> a;
  std::vector<Real> rhs;
  std::vector<int> basis;

  void pivot(int r, int c) {
    const Real inv = 1.0L / a[r][c];
    for (int j = 0; j < cols; ++j) a[r][j] *= inv;
    rhs[r] *= inv;
    a[r][c] = 1.0L;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Real f = a[i][c];
      if (f == 0.0L) continue;
      for (int j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
      rhs[i] -= f * rhs[r];
      a[i][c] = 0.0L;
    }
    basis[r] = c;
  }
};

// Maximizes cost.x over the tableau using Bland's rule: the entering column
// is the lowest-index variable with positive reduced cost, the leaving row
// breaks ratio ties by the lowest basis variable. `allowed` masks columns
// (artificials are banned in phase 2).
LpStatus run_simplex(Tableau& t, const std::vector<Real>& cost, const std::vector<char>& allowed) {
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    int enter = -1;
    for (int j = 0; j < t.cols; ++j) {
      if (!allowed[j]) continue;
      Real reduced = cost[j];
      for (int i = 0; i < t.rows; ++i) {
        const Real cb = cost[t.basis[i]];
        if (cb != 0.0L) reduced -= cb * t.a[i][j];
      }
      if (reduced > kReducedCostEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return LpStatus::Optimal;

    int leave = -1;
    Real best_ratio = 0.0L;
    for (int i = 0; i < t.rows; ++i) {
      if (t.a[i][enter] <= kPivotEps) continue;
      const Real ratio = t.rhs[i] / t.a[i][enter];
      if (leave < 0 || ratio < best_ratio - 1e-15L ||
          (std::fabs(static_cast<double>(ratio - best_ratio)) <= 1e-15 &&
           t.basis[i] < t.basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) return LpStatus::Unbounded;
    t.pivot(leave, enter);
  }
  throw ContractViolation("simplex iteration limit exceeded");
}

}  // namespace

LpSolution solve_lp(const LpProblem& lp) {
  const int n = static_cast<int>(lp.objective.size());
  const int m = static_cast<int>(lp.rows.size());
  for (const auto& row : lp.rows) {
    if (static_cast<int>(row.coeffs.size()) != n) {
      throw BadInput("LP row width does not match the objective");
    }
  }

  // Canonical form: every row becomes coeffs.x <= rhs, then rows with a
  // negative rhs are negated and receive a surplus column plus an artificial.
  struct CanonRow {
    std::vector<Real> coeffs;
    Real rhs;
    bool needs_artificial;
  };
  std::vector<CanonRow> canon(m);
  for (int i = 0; i < m; ++i) {
    const auto& row = lp.rows[i];
    const Real sign = row.sense == RowSense::LessEqual ? 1.0L : -1.0L;
    canon[i].coeffs.resize(n);
    for (int j = 0; j < n; ++j) canon[i].coeffs[j] = sign * static_cast<Real>(row.coeffs[j]);
    canon[i].rhs = sign * static_cast<Real>(row.rhs);
    canon[i].needs_artificial = canon[i].rhs < 0.0L;
  }

  int artificials = 0;
  for (const auto& row : canon) artificials += row.needs_artificial ? 1 : 0;

  Tableau t;
  t.rows = m;
  t.cols = n + m + artificials;
  t.a.assign(m, std::vector<Real>(t.cols, 0.0L));
  t.rhs.assign(m, 0.0L);
  t.basis.assign(m, -1);

  int next_art = n + m;
  for (int i = 0; i < m; ++i) {
    const Real flip = canon[i].needs_artificial ? -1.0L : 1.0L;
    for (int j = 0; j < n; ++j) t.a[i][j] = flip * canon[i].coeffs[j];
    t.rhs[i] = flip * canon[i].rhs;
    t.a[i][n + i] = flip;  // slack (or surplus when the row was flipped)
    if (canon[i].needs_artificial) {
      t.a[i][next_art] = 1.0L;
      t.basis[i] = next_art++;
    } else {
      t.basis[i] = n + i;
    }
  }

  const Real obj_sign = lp.sense == LpSense::Maximize ? 1.0L : -1.0L;
  std::vector<Real> cost(t.cols, 0.0L);
  for (int j = 0; j < n; ++j) cost[j] = obj_sign * static_cast<Real>(lp.objective[j]);

  if (artificials > 0) {
    std::vector<Real> phase1(t.cols, 0.0L);
    for (int j = n + m; j < t.cols; ++j) phase1[j] = -1.0L;
    std::vector<char> allowed(t.cols, 1);
    const LpStatus s = run_simplex(t, phase1, allowed);
    if (s != LpStatus::Optimal) throw ContractViolation("phase-1 simplex did not converge");
    Real infeasibility = 0.0L;
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] >= n + m) infeasibility += t.rhs[i];
    }
    if (infeasibility > kPhase1Tol) return {LpStatus::Infeasible, 0.0, {}};
    // Drive leftover artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] < n + m) continue;
      int col = -1;
      for (int j = 0; j < n + m; ++j) {
        if (std::fabs(static_cast<double>(t.a[i][j])) > static_cast<double>(kPivotEps)) {
          col = j;
          break;
        }
      }
      if (col >= 0) t.pivot(i, col);
      // Otherwise the row is redundant; the artificial stays basic at zero
      // and its banned column can never re-enter.
    }
  }

  std::vector<char> allowed(t.cols, 1);
  for (int j = n + m; j < t.cols; ++j) allowed[j] = 0;
  const LpStatus s = run_simplex(t, cost, allowed);
  if (s == LpStatus::Unbounded) return {LpStatus::Unbounded, 0.0, {}};

  LpSolution sol;
  sol.status = LpStatus::Optimal;
  sol.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) sol.x[t.basis[i]] = static_cast<double>(t.rhs[i]);
  }
  double value = 0.0;
  for (int j = 0; j < n; ++j) value += lp.objective[j] * sol.x[j];
  sol.value = value;
  return sol;
}

}  // namespace gb
