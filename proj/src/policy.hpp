#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "domination.hpp"
#include "envs.hpp"
#include "families.hpp"
#include "graph.hpp"

namespace gb {

// Mirror-descent policy parameters. The exploration distribution u is the
// normalized covering-LP optimum; gamma = (delta* ln n / T)^{1/3} clamped to
// 1/2, eta = gamma^2 / delta*.
struct PolicyConfig {
  int num_arms = 0;
  double gamma = 0.0;
  double eta = 0.0;
  std::vector<double> exploration;  // u, sums to 1
  int64_t horizon = 0;
  double delta_star = 0.0;  // value used in the tuning formulas
  // True when T < n^3 ln(n) / delta*^2 or the gamma formula had to be clamped:
  // the regret guarantee is calibrated for longer horizons.
  bool outside_guarantee_regime = false;
};

PolicyConfig make_config(const DirectedGraph& g, int64_t horizon,
                         const DominationSolution& primal);

struct PolicyState {
  std::vector<double> iterate;   // X_t, strictly positive, sums to 1
  std::vector<double> play_mix;  // (1 - gamma) X_t + gamma u
  int64_t round = 1;
};

PolicyState init_state(const PolicyConfig& config);

// Importance-weighted estimator: zero outside N_out(played_arm), otherwise
// observed loss divided by the probability that the arm is observed under the
// play mix. `observed` must provide a loss for every out-neighbor.
std::vector<double> estimate_loss(const DirectedGraph& g, const PolicyState& state,
                                  int played_arm, const std::map<int, double>& observed);

// Entropic mirror step: X_{t+1}(i) proportional to X_t(i) exp(-eta lhat(i)),
// evaluated in log space. Returns the advanced state with the play mix
// refreshed.
PolicyState md_update(const PolicyState& state, const PolicyConfig& config,
                      std::span<const double> estimated_loss);

// Per-round sums behind the estimator's variance control; exposed for tests.
struct RoundDiagnostics {
  double self_loop_ratio_sum = 0.0;     // sum over vertices with a self-loop
  double exploration_ratio_sum = 0.0;   // sum over U
  double gamma = 0.0;
  double delta_star = 0.0;
};

struct RegretTrace {
  uint64_t seed = 0;
  std::vector<int> arms;
  std::vector<double> losses;        // incurred loss per round
  std::vector<double> cum_regret;    // against the best fixed arm in hindsight
  std::vector<double> cum_pseudo_regret;  // against known means; empty if unknown
  double final_regret = 0.0;
  int64_t flagged_rounds = 0;   // probabilistic runs: non-observable realizations
  double avg_delta_star = 0.0;  // mean covering-LP value over (unflagged) rounds
};

enum class TuningMode {
  Offline,               // single gamma/eta from the average covering-LP value
  AdaptiveExperimental,  // per-round gamma/eta from the running average
};

struct EpisodeOptions {
  uint64_t seed = 0;
  TuningMode tuning = TuningMode::Offline;
  // Offline tuning: override for the average covering-LP value; when absent it
  // is computed from the supplied graphs.
  std::optional<double> delta_bar;
  std::function<void(int64_t, const RoundDiagnostics&)> diagnostics;
};

RegretTrace run_episode(const DirectedGraph& g, Environment& env, int64_t horizon,
                        const EpisodeOptions& opts);

// Caller-supplied configuration (custom exploration distributions, baselines).
RegretTrace run_episode_with_config(const DirectedGraph& g, Environment& env, int64_t horizon,
                                    const PolicyConfig& config, const EpisodeOptions& opts);

// One graph per round; aborts naming the round when a graph is infeasible for
// the covering LP.
RegretTrace run_time_varying(std::span<const DirectedGraph> graphs, Environment& env,
                             int64_t horizon, const EpisodeOptions& opts);

// Independent edge realizations per round. Non-observable realizations are
// played without exploration and counted in flagged_rounds.
RegretTrace run_probabilistic(const ProbabilisticGraph& pg, Environment& env, int64_t horizon,
                              const EpisodeOptions& opts);

}  // namespace gb
