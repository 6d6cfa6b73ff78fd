#pragma once

// Test-only exact LP oracle: a small tableau simplex over arbitrary-precision
// rationals. Independently written from the library's long-double solver so
// the two can cross-check each other.

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

namespace gbtest {

using Rat = boost::multiprecision::cpp_rational;

struct ExactRow {
  std::vector<Rat> coeffs;
  bool greater_equal = false;
  Rat rhs = 0;
};

// Maximizes c.x subject to the rows and x >= 0. Returns nullopt if infeasible.
inline std::optional<Rat> exact_lp_max(const std::vector<Rat>& objective,
                                       const std::vector<ExactRow>& rows) {
  const int n = static_cast<int>(objective.size());
  const int m = static_cast<int>(rows.size());

  // Canonicalize to equalities with rhs >= 0.
  int artificials = 0;
  std::vector<std::vector<Rat>> body(m);
  std::vector<Rat> rhs(m);
  std::vector<bool> needs_art(m);
  for (int i = 0; i < m; ++i) {
    Rat sign = rows[i].greater_equal ? Rat(-1) : Rat(1);
    body[i].resize(n);
    for (int j = 0; j < n; ++j) body[i][j] = sign * rows[i].coeffs[j];
    rhs[i] = sign * rows[i].rhs;
    needs_art[i] = rhs[i] < 0;
    artificials += needs_art[i] ? 1 : 0;
  }

  const int cols = n + m + artificials;
  std::vector<std::vector<Rat>> a(m, std::vector<Rat>(cols, Rat(0)));
  std::vector<Rat> b(m);
  std::vector<int> basis(m, -1);
  int next_art = n + m;
  for (int i = 0; i < m; ++i) {
    const Rat flip = needs_art[i] ? Rat(-1) : Rat(1);
    for (int j = 0; j < n; ++j) a[i][j] = flip * body[i][j];
    b[i] = flip * rhs[i];
    a[i][n + i] = flip;
    if (needs_art[i]) {
      a[i][next_art] = 1;
      basis[i] = next_art++;
    } else {
      basis[i] = n + i;
    }
  }

  auto pivot = [&](int r, int c) {
    const Rat inv = Rat(1) / a[r][c];
    for (int j = 0; j < cols; ++j) a[r][j] *= inv;
    b[r] *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rat f = a[i][c];
      for (int j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    basis[r] = c;
  };

  auto simplex = [&](const std::vector<Rat>& cost, int banned_from) -> bool {
    for (int iter = 0; iter < 100000; ++iter) {
      int enter = -1;
      for (int j = 0; j < (banned_from > 0 ? banned_from : cols); ++j) {
        Rat reduced = cost[j];
        for (int i = 0; i < m; ++i) {
          if (cost[basis[i]] != 0) reduced -= cost[basis[i]] * a[i][j];
        }
        if (reduced > 0) {
          enter = j;
          break;  // Bland: lowest index
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rat best;
      for (int i = 0; i < m; ++i) {
        if (a[i][enter] <= 0) continue;
        const Rat ratio = b[i] / a[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;  // unbounded
      pivot(leave, enter);
    }
    return false;
  };

  if (artificials > 0) {
    std::vector<Rat> phase1(cols, Rat(0));
    for (int j = n + m; j < cols; ++j) phase1[j] = -1;
    if (!simplex(phase1, 0)) return std::nullopt;
    Rat infeas = 0;
    for (int i = 0; i < m; ++i) {
      if (basis[i] >= n + m) infeas += b[i];
    }
    if (infeas != 0) return std::nullopt;
    for (int i = 0; i < m; ++i) {
      if (basis[i] < n + m) continue;
      for (int j = 0; j < n + m; ++j) {
        if (a[i][j] != 0) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  std::vector<Rat> cost(cols, Rat(0));
  for (int j = 0; j < n; ++j) cost[j] = objective[j];
  if (!simplex(cost, n + m)) return std::nullopt;  // unbounded: not used here

  Rat value = 0;
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) value += objective[basis[i]] * b[i];
  }
  return value;
}

}  // namespace gbtest
