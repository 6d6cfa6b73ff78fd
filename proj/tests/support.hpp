#pragma once

// Shared test helpers: seeded random instances and independent oracles.
// Everything here is test-only and deliberately avoids the library's solver
// and rounding code paths.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "domination.hpp"
#include "graph.hpp"
#include "rng.hpp"

namespace gbtest {

inline gb::DirectedGraph random_digraph(gb::Rng& rng, int n, double edge_prob,
                                        double self_loop_prob) {
  std::vector<gb::Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v) {
        if (rng.bernoulli(self_loop_prob)) edges.emplace_back(u, v);
      } else if (rng.bernoulli(edge_prob)) {
        edges.emplace_back(u, v);
      }
    }
  }
  return gb::DirectedGraph(n, std::move(edges));
}

inline gb::DirectedGraph random_weakly_observable(gb::Rng& rng, int min_n = 4, int max_n = 12) {
  for (;;) {
    const int n = rng.uniform_int(min_n, max_n);
    const double p = 0.1 + 0.4 * rng.uniform();
    const double q = 0.6 * rng.uniform();
    gb::DirectedGraph g = random_digraph(rng, n, p, q);
    if (gb::classify(g) == gb::Observability::WeaklyObservable) return g;
  }
}

// Random tree on n vertices with every edge oriented independently.
inline gb::DirectedGraph random_oriented_tree(gb::Rng& rng, int n) {
  std::vector<gb::Edge> edges;
  for (int i = 1; i < n; ++i) {
    const int parent = rng.uniform_int(0, i - 1);
    if (rng.bernoulli(0.5)) {
      edges.emplace_back(parent, i);
    } else {
      edges.emplace_back(i, parent);
    }
  }
  return gb::DirectedGraph(n, std::move(edges));
}

// Plain full enumeration over subsets of U; independent of the library's
// branch-and-bound. Requires |U| <= 24.
inline std::pair<int, std::vector<int>> zeta_by_enumeration(const gb::DirectedGraph& g) {
  const auto u_set = gb::self_loop_free_set(g);
  const int m = static_cast<int>(u_set.size());
  int best = 0;
  std::vector<int> witness;
  for (uint32_t mask = 0; mask < (uint32_t{1} << m); ++mask) {
    std::vector<char> member(g.vertex_count(), 0);
    int size = 0;
    for (int k = 0; k < m; ++k) {
      if (mask >> k & 1) {
        member[u_set[k]] = 1;
        ++size;
      }
    }
    if (size <= best) continue;
    bool ok = true;
    for (int i = 0; i < g.vertex_count() && ok; ++i) {
      int load = 0;
      for (int j : g.out_neighbors(i)) load += member[j];
      if (load > 1) ok = false;
    }
    if (ok) {
      best = size;
      witness.clear();
      for (int k = 0; k < m; ++k) {
        if (mask >> k & 1) witness.push_back(u_set[k]);
      }
    }
  }
  return {best, witness};
}

// Minimum dominating set of U by full subset enumeration; n <= 20.
inline std::optional<int> delta_by_enumeration(const gb::DirectedGraph& g) {
  const int n = g.vertex_count();
  const auto u_set = gb::self_loop_free_set(g);
  for (int j : u_set) {
    if (g.in_degree(j) == 0) return std::nullopt;
  }
  int best = n + 1;
  for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask) {
    const int size = std::popcount(mask);
    if (size >= best) continue;
    bool ok = true;
    for (int j : u_set) {
      bool covered = false;
      for (int i : g.in_neighbors(j)) {
        if (mask >> i & 1) {
          covered = true;
          break;
        }
      }
      if (!covered) {
        ok = false;
        break;
      }
    }
    if (ok) best = size;
  }
  return best;
}

// Independent numeric minimizer of eta <x, lhat> + KL(x || base) over the
// simplex: cyclic golden-section searches along (e_i - e_j) directions. Stays
// away from the multiplicative-weights closed form on purpose.
inline std::vector<double> argmin_md_objective(std::span<const double> base,
                                               std::span<const double> lhat, double eta) {
  const size_t n = base.size();
  auto xlogx = [](double v) { return v > 0.0 ? v * std::log(v) : 0.0; };
  auto objective = [&](const std::vector<double>& x) {
    double f = 0.0;
    for (size_t i = 0; i < n; ++i) {
      f += eta * x[i] * lhat[i] + xlogx(x[i]) - x[i] * std::log(base[i]);
    }
    return f;
  };

  std::vector<double> x(base.begin(), base.end());
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int sweep = 0; sweep < 4000; ++sweep) {
    double moved = 0.0;
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        double lo = -x[i], hi = x[j];
        auto eval = [&](double t) {
          std::vector<double> y = x;
          y[i] += t;
          y[j] -= t;
          return objective(y);
        };
        double a = lo, b = hi;
        double c = b - golden * (b - a);
        double d = a + golden * (b - a);
        double fc = eval(c), fd = eval(d);
        for (int it = 0; it < 120; ++it) {
          if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - golden * (b - a);
            fc = eval(c);
          } else {
            a = c;
            c = d;
            fc = fd;
            d = a + golden * (b - a);
            fd = eval(d);
          }
        }
        const double t = (a + b) / 2.0;
        x[i] += t;
        x[j] -= t;
        moved = std::max(moved, std::fabs(t));
      }
    }
    if (moved < 1e-12) break;
  }
  return x;
}

}  // namespace gbtest
