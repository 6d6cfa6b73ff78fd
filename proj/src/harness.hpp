#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "domination.hpp"
#include "graph.hpp"
#include "policy.hpp"

namespace gb {

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Least squares of ln(y) against ln(x); y must be positive.
LogLogFit fit_loglog(std::span<const double> xs, std::span<const double> ys);

struct ScalingReport {
  std::vector<int64_t> t_grid;
  std::vector<double> mean_final_regret;
  std::vector<double> stderr_final_regret;
  double slope = 0.0;
  double intercept = 0.0;
  int num_seeds = 0;
  std::string env_spec;
};

// Runs episodes over the grid (>= 4 strictly increasing horizons, >= 30
// seeds), aggregates final regrets and fits the log-log slope. Episode e uses
// master seed base_seed + e. When flush_dir is nonempty, per-episode results
// are appended to <flush_dir>/sweep_episodes.csv as they complete, so partial
// results survive an abort.
ScalingReport sweep(const DirectedGraph& g, const std::string& env_spec,
                    std::span<const int64_t> t_grid, int num_seeds, uint64_t base_seed,
                    const std::string& flush_dir = "");

struct CompareReport {
  int64_t horizon = 0;
  int num_seeds = 0;
  double fractional_mean = 0.0;
  double fractional_stderr = 0.0;
  double integral_mean = 0.0;
  double integral_stderr = 0.0;
  double difference_mean = 0.0;    // fractional - integral, paired by seed
  double difference_stderr = 0.0;
  double delta_star = 0.0;
  int delta = 0;
  bool delta_exact = false;  // false: greedy dominating-set baseline
};

// Paired comparison of the LP-based exploration distribution against the
// uniform distribution over a minimum integral dominating set.
CompareReport compare_exploration(const DirectedGraph& g, const std::string& env_spec,
                                  int64_t horizon, int num_seeds, uint64_t base_seed);

struct ParamsReport {
  GapReport gap;
  DegeneracyStatus degeneracy = DegeneracyStatus::Unknown;
  int vertex_count = 0;
  int64_t edge_count = 0;
};

ParamsReport report_params(const DirectedGraph& g);

// Serialization. JSON keys are emitted in sorted order and CSV numbers with
// %.17g, so a fixed (graph, env, seed, T) tuple reproduces identical bytes.
std::string params_to_json(const ParamsReport& report);
std::string round_to_json(const DirectedGraph& g);
std::string traces_to_csv(std::span<const RegretTrace> traces);
std::string sweep_to_json(const ScalingReport& report);
std::string compare_to_json(const CompareReport& report);

// Runs num_seeds episodes (master seeds base_seed + e) and renders the CSV.
std::string run_traces_csv(const DirectedGraph& g, const std::string& env_spec, int64_t horizon,
                           int num_seeds, uint64_t base_seed);

}  // namespace gb
