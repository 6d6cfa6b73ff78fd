#include "policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "errors.hpp"
#include "rng.hpp"

namespace gb {

namespace {

constexpr double kIterateFloor = 1e-300;

std::vector<double> mix_exploration(std::span<const double> iterate, double gamma,
                                    std::span<const double> u) {
  std::vector<double> mix(iterate.size());
  for (size_t i = 0; i < iterate.size(); ++i) {
    mix[i] = (1.0 - gamma) * iterate[i] + gamma * u[i];
  }
  return mix;
}

std::vector<double> normalized_exploration(const DominationSolution& primal) {
  double total = 0.0;
  for (double xi : primal.x) total += xi;
  std::vector<double> u(primal.x.size());
  if (total <= 0.0) {
    // Nothing to dominate (U empty); exploration is irrelevant.
    u.assign(u.size(), 1.0 / static_cast<double>(u.size()));
    return u;
  }
  for (size_t i = 0; i < u.size(); ++i) u[i] = primal.x[i] / total;
  double sum = 0.0;
  for (double ui : u) sum += ui;
  for (double& ui : u) ui /= sum;
  return u;
}

struct Tuning {
  double gamma = 0.0;
  double eta = 0.0;
  bool clamped = false;
};

Tuning tune(double delta, int num_arms, int64_t horizon) {
  Tuning t;
  if (delta < 1e-9) {
    // U is empty on every round seen: every arm observes itself, so no forced
    // exploration; fall back to the plain exponential-weights step size.
    t.gamma = 0.0;
    t.eta = std::sqrt(std::log(static_cast<double>(num_arms)) / static_cast<double>(horizon));
    return t;
  }
  t.gamma = std::cbrt(delta * std::log(static_cast<double>(num_arms)) /
                      static_cast<double>(horizon));
  if (t.gamma > 0.5) {
    t.gamma = 0.5;
    t.clamped = true;
  }
  t.eta = t.gamma * t.gamma / delta;
  return t;
}

// Estimator core shared by the public operation and the episode loops. The
// denominator sums play-mix mass over in-neighbors in ascending order.
template <class LossAt>
std::vector<double> estimate_impl(const DirectedGraph& g, std::span<const double> mix,
                                  int played_arm, LossAt&& loss_at) {
  std::vector<double> lhat(g.vertex_count(), 0.0);
  for (int j : g.out_neighbors(played_arm)) {
    double observe_prob = 0.0;
    for (int i : g.in_neighbors(j)) observe_prob += mix[i];
    if (!(observe_prob > 0.0)) {
      throw ContractViolation("observation probability vanished for arm " + std::to_string(j));
    }
    lhat[j] = loss_at(j) / observe_prob;
  }
  return lhat;
}

struct ArmedRound {
  double gamma = 0.0;
  double eta = 0.0;
  const std::vector<double>* u = nullptr;  // null: no exploration this round
  double delta_star = 0.0;
  bool flagged = false;
};

// Per-graph covering-LP results, cached by serialized bytes so repeated
// graphs in time-varying runs solve once.
struct PrimalCache {
  std::unordered_map<std::string, std::pair<DominationSolution, std::vector<double>>> entries;

  const std::pair<DominationSolution, std::vector<double>>& get(const DirectedGraph& g) {
    const std::string key = serialize_graph(g);
    auto it = entries.find(key);
    if (it == entries.end()) {
      DominationSolution primal = solve_primal(g);
      std::vector<double> u = normalized_exploration(primal);
      it = entries.emplace(key, std::make_pair(std::move(primal), std::move(u))).first;
    }
    return it->second;
  }
};

struct Bookkeeping {
  std::vector<double> cum_arm;
  double cum_played = 0.0;
  double cum_mean_played = 0.0;
  std::optional<std::vector<double>> means;
  double best_mean = 0.0;

  Bookkeeping(int n, Environment& env) : cum_arm(n, 0.0), means(env.mean_losses()) {
    if (means) best_mean = *std::min_element(means->begin(), means->end());
  }

  void record(RegretTrace& trace, int64_t t, int arm, std::span<const double> loss) {
    cum_played += loss[arm];
    for (size_t a = 0; a < cum_arm.size(); ++a) cum_arm[a] += loss[a];
    const double bench = *std::min_element(cum_arm.begin(), cum_arm.end());
    trace.arms.push_back(arm);
    trace.losses.push_back(loss[arm]);
    trace.cum_regret.push_back(cum_played - bench);
    if (means) {
      cum_mean_played += (*means)[arm];
      trace.cum_pseudo_regret.push_back(cum_mean_played - static_cast<double>(t) * best_mean);
    }
  }
};

void emit_diagnostics(const EpisodeOptions& opts, const DirectedGraph& g, int64_t t,
                      std::span<const double> iterate, std::span<const double> mix,
                      double gamma, double delta_star) {
  if (!opts.diagnostics) return;
  RoundDiagnostics diag;
  diag.gamma = gamma;
  diag.delta_star = delta_star;
  for (int i = 0; i < g.vertex_count(); ++i) {
    double observe_prob = 0.0;
    for (int j : g.in_neighbors(i)) observe_prob += mix[j];
    if (!(observe_prob > 0.0)) continue;
    const double ratio = iterate[i] / observe_prob;
    if (g.has_self_loop(i)) {
      diag.self_loop_ratio_sum += ratio;
    } else {
      diag.exploration_ratio_sum += ratio;
    }
  }
  opts.diagnostics(t, diag);
}

std::vector<double> round_losses(Environment& env, int64_t t, int n) {
  std::vector<double> loss = env.losses(t);
  if (static_cast<int>(loss.size()) != n) {
    throw ContractViolation("environment emitted a loss vector of the wrong length");
  }
  for (double v : loss) {
    if (!(v >= 0.0) || !(v <= 1.0)) {
      throw ContractViolation("environment loss outside [0, 1] at round " + std::to_string(t));
    }
  }
  return loss;
}

std::vector<double> advance_iterate(std::span<const double> iterate, double eta,
                                    std::span<const double> lhat) {
  const size_t n = iterate.size();
  bool all_zero = true;
  for (double v : lhat) {
    if (v != 0.0) {
      all_zero = false;
      break;
    }
  }
  if (all_zero) return std::vector<double>(iterate.begin(), iterate.end());

  // Log-space multiplicative weights with max subtraction; lhat can reach
  // 1/(gamma u_min), so the shift is what keeps exp() in range.
  std::vector<double> logw(n);
  double top = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < n; ++i) {
    logw[i] = std::log(iterate[i]) - eta * lhat[i];
    top = std::max(top, logw[i]);
  }
  std::vector<double> next(n);
  double total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    next[i] = std::exp(logw[i] - top);
    total += next[i];
  }
  double corrected = 0.0;
  for (size_t i = 0; i < n; ++i) {
    next[i] = std::max(next[i] / total, kIterateFloor);
    corrected += next[i];
  }
  for (size_t i = 0; i < n; ++i) next[i] /= corrected;
  return next;
}

}  // namespace

PolicyConfig make_config(const DirectedGraph& g, int64_t horizon,
                         const DominationSolution& primal) {
  if (horizon < 1) throw BadInput("horizon must be at least 1");
  const Observability obs = classify(g);
  if (obs == Observability::StronglyObservable) {
    throw BadInput(
        "strongly observable graphs are out of scope for this policy "
        "(the sqrt-T regime); supply a weakly observable graph");
  }
  if (obs == Observability::NonObservable) {
    throw BadInput("non-observable graphs admit no sublinear-regret policy");
  }
  if (static_cast<int>(primal.x.size()) != g.vertex_count()) {
    throw BadInput("covering solution size does not match the graph");
  }
  if (!(primal.value > 0.0)) {
    throw ContractViolation("weakly observable graph with vanishing covering value");
  }

  PolicyConfig config;
  config.num_arms = g.vertex_count();
  config.horizon = horizon;
  config.delta_star = primal.value;
  config.exploration = normalized_exploration(primal);
  const Tuning t = tune(primal.value, config.num_arms, horizon);
  config.gamma = t.gamma;
  config.eta = t.eta;
  const double n = static_cast<double>(config.num_arms);
  const double recommended_min_horizon = n * n * n * std::log(n) / (primal.value * primal.value);
  config.outside_guarantee_regime =
      t.clamped || static_cast<double>(horizon) < recommended_min_horizon;
  return config;
}

PolicyState init_state(const PolicyConfig& config) {
  PolicyState state;
  state.iterate.assign(config.num_arms, 1.0 / config.num_arms);
  state.play_mix = mix_exploration(state.iterate, config.gamma, config.exploration);
  state.round = 1;
  return state;
}

std::vector<double> estimate_loss(const DirectedGraph& g, const PolicyState& state,
                                  int played_arm, const std::map<int, double>& observed) {
  if (played_arm < 0 || played_arm >= g.vertex_count()) {
    throw BadInput("played arm out of range");
  }
  return estimate_impl(g, state.play_mix, played_arm, [&](int j) {
    const auto it = observed.find(j);
    if (it == observed.end()) {
      throw ContractViolation("missing observation for arm " + std::to_string(j) +
                              " in N_out of the played arm");
    }
    return it->second;
  });
}

PolicyState md_update(const PolicyState& state, const PolicyConfig& config,
                      std::span<const double> estimated_loss) {
  if (static_cast<int>(estimated_loss.size()) != config.num_arms) {
    throw BadInput("estimated loss size does not match the configuration");
  }
  PolicyState next;
  next.iterate = advance_iterate(state.iterate, config.eta, estimated_loss);
  next.play_mix = mix_exploration(next.iterate, config.gamma, config.exploration);
  next.round = state.round + 1;
  return next;
}

RegretTrace run_episode_with_config(const DirectedGraph& g, Environment& env, int64_t horizon,
                                    const PolicyConfig& config, const EpisodeOptions& opts) {
  const int n = g.vertex_count();
  if (env.num_arms() != n) throw BadInput("environment arm count does not match the graph");
  if (horizon < 1) throw BadInput("horizon must be at least 1");

  Rng policy_rng = Rng(opts.seed).split("policy");
  PolicyState state = init_state(config);
  RegretTrace trace;
  trace.seed = opts.seed;
  trace.avg_delta_star = config.delta_star;
  Bookkeeping books(n, env);

  for (int64_t t = 1; t <= horizon; ++t) {
    const int arm = policy_rng.sample_discrete(state.play_mix);
    const std::vector<double> loss = round_losses(env, t, n);
    emit_diagnostics(opts, g, t, state.iterate, state.play_mix, config.gamma, config.delta_star);
    const std::vector<double> lhat =
        estimate_impl(g, state.play_mix, arm, [&](int j) { return loss[j]; });
    state = md_update(state, config, lhat);
    books.record(trace, t, arm, loss);
  }
  trace.final_regret = trace.cum_regret.empty() ? 0.0 : trace.cum_regret.back();
  return trace;
}

RegretTrace run_episode(const DirectedGraph& g, Environment& env, int64_t horizon,
                        const EpisodeOptions& opts) {
  const PolicyConfig config = make_config(g, horizon, solve_primal(g));
  return run_episode_with_config(g, env, horizon, config, opts);
}

namespace {

enum class InfeasiblePolicy { Abort, SkipAndFlag };

RegretTrace run_varying(std::span<const DirectedGraph> graphs, Environment& env, int64_t horizon,
                        const EpisodeOptions& opts, InfeasiblePolicy infeasible) {
  if (graphs.empty()) throw BadInput("need one graph per round");
  if (static_cast<int64_t>(graphs.size()) != horizon) {
    throw BadInput("graph sequence length must equal the horizon");
  }
  const int n = graphs.front().vertex_count();
  for (const auto& g : graphs) {
    if (g.vertex_count() != n) throw BadInput("all graphs must share the vertex set");
  }
  if (env.num_arms() != n) throw BadInput("environment arm count does not match the graph");

  PrimalCache cache;
  std::vector<char> usable(graphs.size(), 1);
  for (size_t t = 0; t < graphs.size(); ++t) {
    if (classify(graphs[t]) == Observability::NonObservable) {
      if (infeasible == InfeasiblePolicy::Abort) {
        throw BadInput("graph for round " + std::to_string(t + 1) +
                       " is infeasible for the covering LP (non-observable)");
      }
      usable[t] = 0;
    }
  }

  // Offline tuning averages the covering value over the usable rounds.
  double delta_bar = 0.0;
  if (opts.tuning == TuningMode::Offline) {
    if (opts.delta_bar) {
      delta_bar = *opts.delta_bar;
    } else {
      double total = 0.0;
      int64_t count = 0;
      for (size_t t = 0; t < graphs.size(); ++t) {
        if (!usable[t]) continue;
        total += cache.get(graphs[t]).first.value;
        ++count;
      }
      if (count == 0) throw BadInput("no usable rounds to tune against");
      delta_bar = total / static_cast<double>(count);
    }
  }

  Rng policy_rng = Rng(opts.seed).split("policy");
  RegretTrace trace;
  trace.seed = opts.seed;
  Bookkeeping books(n, env);

  std::vector<double> iterate(n, 1.0 / n);
  double delta_sum = 0.0;
  int64_t delta_count = 0;

  for (int64_t t = 1; t <= horizon; ++t) {
    const DirectedGraph& g = graphs[t - 1];
    const bool flagged = !usable[t - 1];

    double gamma = 0.0, eta = 0.0, delta_t = 0.0;
    const std::vector<double>* u = nullptr;
    if (!flagged) {
      const auto& [primal, exploration] = cache.get(g);
      delta_t = primal.value;
      delta_sum += delta_t;
      ++delta_count;
      u = &exploration;
    }
    if (opts.tuning == TuningMode::Offline) {
      const Tuning tu = tune(delta_bar, n, horizon);
      gamma = tu.gamma;
      eta = tu.eta;
    } else {
      const double running =
          delta_count > 0 ? delta_sum / static_cast<double>(delta_count) : 1.0;
      const Tuning tu = tune(running, n, horizon);
      gamma = tu.gamma;
      eta = tu.eta;
    }

    std::vector<double> mix =
        flagged ? iterate : mix_exploration(iterate, gamma, *u);
    const int arm = policy_rng.sample_discrete(mix);
    const std::vector<double> loss = round_losses(env, t, n);
    if (opts.diagnostics && !flagged) {
      PolicyState snapshot{iterate, mix, t};
      emit_diagnostics(opts, g, t, snapshot.iterate, snapshot.play_mix, gamma, delta_t);
    }
    const std::vector<double> lhat = estimate_impl(g, mix, arm, [&](int j) { return loss[j]; });
    iterate = advance_iterate(iterate, eta, lhat);
    if (flagged) ++trace.flagged_rounds;
    books.record(trace, t, arm, loss);
  }

  trace.final_regret = trace.cum_regret.empty() ? 0.0 : trace.cum_regret.back();
  trace.avg_delta_star =
      delta_count > 0 ? delta_sum / static_cast<double>(delta_count) : 0.0;
  return trace;
}

}  // namespace

RegretTrace run_time_varying(std::span<const DirectedGraph> graphs, Environment& env,
                             int64_t horizon, const EpisodeOptions& opts) {
  return run_varying(graphs, env, horizon, opts, InfeasiblePolicy::Abort);
}

RegretTrace run_probabilistic(const ProbabilisticGraph& pg, Environment& env, int64_t horizon,
                              const EpisodeOptions& opts) {
  if (horizon < 1) throw BadInput("horizon must be at least 1");
  Rng graph_rng = Rng(opts.seed).split("graph");
  std::vector<DirectedGraph> realizations;
  realizations.reserve(horizon);
  for (int64_t t = 0; t < horizon; ++t) {
    std::vector<Edge> edges;
    for (size_t e = 0; e < pg.base.edges().size(); ++e) {
      if (graph_rng.bernoulli(pg.edge_prob[e])) edges.push_back(pg.base.edges()[e]);
    }
    realizations.emplace_back(pg.base.vertex_count(), std::move(edges));
  }
  return run_varying(realizations, env, horizon, opts, InfeasiblePolicy::SkipAndFlag);
}

}  // namespace gb
