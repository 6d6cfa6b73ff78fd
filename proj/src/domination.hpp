#pragma once

#include <optional>
#include <span>
#include <vector>

#include "graph.hpp"

namespace gb {

// Tolerance for LP feasibility and duality assertions: far above long-double
// simplex noise, far below any structural gap in the instances of interest.
inline constexpr double kLpTolerance = 1e-6;

// Optimal solution of the covering LP: minimize sum(x) subject to
// sum_{i in N_in(j)} x_i >= 1 for every j in U, 0 <= x <= 1.
// `value` is the fractional weak domination number delta*.
struct DominationSolution {
  std::vector<double> x;
  double value = 0.0;
};

// Solution of the packing LP: maximize sum(y) over U subject to
// sum_{j in N_out(i) cap U} y_j <= 1 for every vertex i, 0 <= y <= 1.
// y is stored full-length with zeros off U. `value` is zeta* when fractional.
struct PackingSolution {
  std::vector<double> y;
  double value = 0.0;
  bool integral = false;
};

struct IntegralCover {
  std::vector<int> set;
  int value = 0;
  bool exact = false;  // false: greedy upper bound (enumeration over budget)
};

struct IntegralPacking {
  std::vector<int> set;
  int value = 0;
  bool exact = false;  // false: greedy lower bound
};

struct GapReport {
  Observability observability = Observability::WeaklyObservable;
  std::optional<double> delta_star;  // absent on non-observable graphs
  double zeta_star = 0.0;
  std::optional<int> delta;
  bool delta_exact = false;
  int zeta = 0;
  bool zeta_exact = false;
  std::optional<double> primal_gap;  // delta / delta*
  std::optional<double> dual_gap;    // zeta* / zeta, absent when zeta == 0
};

// Errors with the uncovered vertex named when some j in U has no in-neighbor.
DominationSolution solve_primal(const DirectedGraph& g);

// The packing LP is always feasible (y = 0), so this succeeds on any graph;
// its value equals solve_primal's whenever the covering LP is feasible.
PackingSolution solve_dual(const DirectedGraph& g);

// Minimum / maximum integral solutions. Exact by enumeration when the search
// fits the internal budget, otherwise greedy bounds flagged `exact = false`.
IntegralCover integral_delta(const DirectedGraph& g);
IntegralPacking integral_zeta(const DirectedGraph& g);

GapReport gap_report(const DirectedGraph& g);

// Post-hoc constraint checks, independent of the solver path.
bool primal_feasible(const DirectedGraph& g, std::span<const double> x, double tol);
bool dual_feasible(const DirectedGraph& g, std::span<const double> y, double tol);

}  // namespace gb
