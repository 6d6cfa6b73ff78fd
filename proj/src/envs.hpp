#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graph.hpp"
#include "rng.hpp"

namespace gb {

// Oblivious loss oracle: losses at round t are a function of (t, own rng
// stream) only. The interface never sees the played arm; stochastic
// environments must be queried once per round with ascending t.
class Environment {
 public:
  virtual ~Environment() = default;
  virtual int num_arms() const = 0;
  virtual std::vector<double> losses(int64_t round) = 0;
  // Known per-arm means, when the environment is stochastic with fixed means.
  virtual std::optional<std::vector<double>> mean_losses() const { return std::nullopt; }
  virtual std::string descriptor() const = 0;
};

// Stochastic instance built on a k-packing independent set S: arms off S pay
// loss 1 every round, the special arm draws Ber(1/2 - eps), the rest of S
// draws Ber(1/2).
struct HardInstance {
  std::vector<int> packing_set;
  int special_arm = 0;
  double epsilon = 0.1;
  int packing_k = 1;
};

std::unique_ptr<Environment> hard_instance_env(const DirectedGraph& g, const HardInstance& hi,
                                               uint64_t seed);

// Preset epsilon schedules for hard instances.
double hard_epsilon_pack(int packing_size, int k, int64_t horizon);  // (|S|/(kT))^{1/3}
double hard_epsilon_log(int packing_size, int64_t horizon);          // (ln|S|/T)^{1/3}

std::unique_ptr<Environment> const_env(std::vector<double> losses);
std::unique_ptr<Environment> bernoulli_env(std::vector<double> means, uint64_t seed);
std::unique_ptr<Environment> file_env(const std::string& path, int num_arms);

// Mini-language:
//   hard:S=<i;j;...>,j=<special>,eps=<float|pack|log>[,k=<int>]
//   bernoulli:<p0;p1;...>      (single value broadcasts)
//   const:<v0;v1;...>          (single value broadcasts)
//   file:<path>                (CSV, one round per line, n columns)
std::unique_ptr<Environment> make_environment(const std::string& spec, const DirectedGraph& g,
                                              int64_t horizon, uint64_t seed);

// ---------------------------------------------------------------------------
// Best arm identification instances and the uniform-pull strategy.

enum class BaiFamily { P, Q };

// P: n vectors of n means; vector j has mean 1/2 - eps at arm j, 1/2 elsewhere.
// Q: n+1 vectors over arms 0..n; vector 0 lowers arm 0 by eps, vector j >= 1
// lowers arm 0 by eps/2 and arm j by eps.
std::vector<std::vector<double>> bai_instances(int n, double eps, BaiFamily family);

// Pulls every arm once per round for `rounds` rounds, then returns the arm
// with the minimum empirical mean (ties: lowest index).
int uniform_pull_bai(std::span<const double> means, int64_t rounds, Rng& rng);

}  // namespace gb
