#include <doctest.h>

#include <cmath>

#include "domination.hpp"
#include "errors.hpp"
#include "families.hpp"
#include "packing.hpp"
#include "support.hpp"

using namespace gb;

TEST_CASE("verify_k_packing: complete bipartite larger side") {
  DirectedGraph g = gen_complete_bipartite(2, 3);
  const std::vector<int> larger = {2, 3, 4};
  CHECK(verify_k_packing(g, larger, 3));
  CHECK_FALSE(verify_k_packing(g, larger, 2));
}

TEST_CASE("verify_k_packing: orthogonality graph independent side") {
  const int k = 4;
  DirectedGraph g = gen_orthogonal_f2k(k);
  const int side1 = 1 << k;
  std::vector<int> side2;
  for (int v = side1; v < g.vertex_count(); ++v) side2.push_back(v);
  CHECK(static_cast<int>(side2.size()) == (g.vertex_count() - 1) / 2);
  CHECK(verify_k_packing(g, side2, (g.vertex_count() + 1) / 4));
  for (int v : side2) {
    int degree_into_side1 = 0;
    for (int w : g.out_neighbors(v)) degree_into_side1 += w < side1 ? 1 : 0;
    CHECK(degree_into_side1 == (1 << (k - 1)));
  }
}

TEST_CASE("verify_k_packing: self-loops break independence") {
  DirectedGraph g(2, {{0, 0}});
  CHECK_FALSE(verify_k_packing(g, std::vector<int>{0}, 5));
  CHECK(verify_k_packing(g, std::vector<int>{1}, 1));
}

TEST_CASE("greedy_one_packing keeps an unconstrained packing set whole") {
  DirectedGraph g = gen_named("dominated_matching:3");
  const std::vector<int> targets = {1, 3, 5};
  const auto result = greedy_one_packing(g, targets);
  CHECK(result.vertices == targets);
  CHECK(verify_k_packing(g, result.vertices, 1));
}

TEST_CASE("greedy_one_packing on the six-cycle") {
  DirectedGraph g = gen_named("directed_cycle:6");
  const std::vector<int> all = {0, 1, 2, 3, 4, 5};
  const auto result = greedy_one_packing(g, all);
  CHECK(result.vertices == std::vector<int>{0, 2, 4});
  CHECK(verify_k_packing(g, result.vertices, 1));
  CHECK(result.vertices.size() >= 2);
  // Enumeration confirms the greedy result is in fact maximum here.
  CHECK(max_k_packing_bruteforce(g, 1).vertices.size() == 3);
}

TEST_CASE("greedy_one_packing rejects non-packing inputs") {
  DirectedGraph g = gen_named("out_star:3");  // 0 -> {1,2,3}
  CHECK_THROWS_AS(greedy_one_packing(g, std::vector<int>{1, 2}), BadInput);
  DirectedGraph loops(2, {{0, 0}});
  CHECK_THROWS_AS(greedy_one_packing(loops, std::vector<int>{0}), BadInput);
}

TEST_CASE("greedy_one_packing keeps at least a third on random graphs") {
  Rng rng(1234);
  for (int trial = 0; trial < 1000; ++trial) {
    DirectedGraph g = gbtest::random_digraph(rng, 12, 0.25, 0.25);
    const auto packing = integral_zeta(g);
    if (packing.value == 0) continue;
    const auto result = greedy_one_packing(g, packing.set);
    CHECK(verify_k_packing(g, result.vertices, 1));
    CHECK(3 * static_cast<int>(result.vertices.size()) >= packing.value);
    // Chain: the maximum 1-packing is at least the greedy one.
    CHECK(max_k_packing_bruteforce(g, 1).vertices.size() >= result.vertices.size());
  }
}

TEST_CASE("degenerate_round: directed trees reach the fractional optimum") {
  Rng rng(5150);
  for (int trial = 0; trial < 20; ++trial) {
    DirectedGraph g = gbtest::random_oriented_tree(rng, rng.uniform_int(2, 14));
    const auto fractional = solve_dual(g);
    const auto rounded = degenerate_round(g, fractional);
    CHECK(rounded.integral);
    CHECK(rounded.value >= fractional.value - 1e-9);
    CHECK(std::fabs(rounded.value - fractional.value) <= 1e-6);
    CHECK(dual_feasible(g, rounded.y, 1e-12));
    CHECK(integral_zeta(g).value == doctest::Approx(rounded.value));
  }
}

TEST_CASE("degenerate_round: five-cycle value matches enumeration") {
  DirectedGraph g = gen_named("directed_cycle:5");
  const auto fractional = solve_dual(g);
  const auto rounded = degenerate_round(g, fractional);
  CHECK(rounded.value == doctest::Approx(5.0));
  CHECK(integral_zeta(g).value == 5);
}

TEST_CASE("degenerate_round: all-zero input stays feasible") {
  DirectedGraph g = gen_named("directed_path:3");
  PackingSolution zeros;
  zeros.y.assign(3, 0.0);
  zeros.value = 0.0;
  const auto rounded = degenerate_round(g, zeros);
  CHECK(rounded.value >= 0.0);
  CHECK(dual_feasible(g, rounded.y, 1e-12));
}

TEST_CASE("degenerate_round: random feasible fractional inputs never lose value") {
  Rng rng(9000);
  for (int trial = 0; trial < 30; ++trial) {
    DirectedGraph g = trial % 2 == 0
                          ? gbtest::random_oriented_tree(rng, rng.uniform_int(3, 12))
                          : gen_named("directed_cycle:" + std::to_string(rng.uniform_int(3, 10)));
    PackingSolution fractional;
    fractional.y.assign(g.vertex_count(), 0.0);
    for (int v : self_loop_free_set(g)) fractional.y[v] = rng.uniform();
    double worst = 1.0;
    for (int i = 0; i < g.vertex_count(); ++i) {
      double load = 0.0;
      for (int j : g.out_neighbors(i)) load += fractional.y[j];
      worst = std::max(worst, load);
    }
    for (double& y : fractional.y) y /= worst;
    for (double y : fractional.y) fractional.value += y;
    const auto rounded = degenerate_round(g, fractional);
    CHECK(rounded.value >= fractional.value - 1e-9);
    CHECK(dual_feasible(g, rounded.y, 1e-12));
  }
}

TEST_CASE("degenerate_round rejects non-degenerate graphs") {
  std::vector<Edge> edges;
  for (int u = 0; u < 4; ++u) {
    for (int v = 0; v < 4; ++v) {
      if (u != v) edges.emplace_back(u, v);
    }
  }
  DirectedGraph g(4, std::move(edges));
  PackingSolution zeros;
  zeros.y.assign(4, 0.0);
  CHECK_THROWS_WITH_AS(degenerate_round(g, zeros), doctest::Contains("1-degenerate"), BadInput);
}

TEST_CASE("max_k_packing_bruteforce: known instances") {
  CHECK(max_k_packing_bruteforce(gen_complete_bipartite(2, 3), 3).vertices ==
        std::vector<int>{2, 3, 4});
  DirectedGraph loops(3, {{0, 0}, {1, 1}, {2, 2}});
  CHECK(max_k_packing_bruteforce(loops, 2).vertices.empty());
  DirectedGraph arc(2, {{0, 1}});
  const auto best = max_k_packing_bruteforce(arc, 1);
  CHECK(best.vertices.size() == 1);
}

TEST_CASE("max_k_packing_bruteforce is monotone in k") {
  Rng rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    DirectedGraph g = gbtest::random_digraph(rng, rng.uniform_int(3, 10), 0.3, 0.2);
    size_t prev = 0;
    for (int k = 0; k <= 4; ++k) {
      const size_t size = max_k_packing_bruteforce(g, k).vertices.size();
      CHECK(size >= prev);
      prev = size;
    }
  }
}

TEST_CASE("max_k_packing_bruteforce refuses oversized graphs") {
  DirectedGraph g(21, {});
  CHECK_THROWS_AS(max_k_packing_bruteforce(g, 1), BadInput);
}
