#pragma once

#include <vector>

namespace gb {

enum class RowSense { LessEqual, GreaterEqual };
enum class LpSense { Minimize, Maximize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpRow {
  std::vector<double> coeffs;
  RowSense sense = RowSense::LessEqual;
  double rhs = 0.0;
};

// Dense LP over x >= 0. Upper bounds are expressed as ordinary rows.
struct LpProblem {
  LpSense sense = LpSense::Minimize;
  std::vector<double> objective;
  std::vector<LpRow> rows;
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  std::vector<double> x;
};

// Two-phase dense tableau simplex with Bland's rule. Deterministic and
// cycle-free; long double arithmetic keeps residuals far below the 1e-6
// tolerances used by callers.
LpSolution solve_lp(const LpProblem& lp);

}  // namespace gb
