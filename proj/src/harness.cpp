#include "harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "errors.hpp"
#include "packing.hpp"
#include "rng.hpp"

namespace gb {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct MeanStderr {
  double mean = 0.0;
  double se = 0.0;
};

MeanStderr mean_stderr(std::span<const double> values) {
  MeanStderr out;
  const double k = static_cast<double>(values.size());
  for (double v : values) out.mean += v;
  out.mean /= k;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.se = std::sqrt(ss / (k - 1.0)) / std::sqrt(k);
  }
  return out;
}

uint64_t episode_seed(uint64_t base_seed, int index) {
  return base_seed + static_cast<uint64_t>(index);
}

uint64_t env_seed_for(uint64_t master) { return Rng(master).split("env").seed(); }

RegretTrace run_one(const DirectedGraph& g, const PolicyConfig& config,
                    const std::string& env_spec, int64_t horizon, uint64_t master) {
  auto env = make_environment(env_spec, g, horizon, env_seed_for(master));
  EpisodeOptions opts;
  opts.seed = master;
  return run_episode_with_config(g, *env, horizon, config, opts);
}

// Fan-out over independent episodes with deterministic, in-order collection.
// `flush` (optional) receives completed results in index order. The first
// exception stops the fan-out and is rethrown on the calling thread.
template <class Job, class Flush>
void parallel_for(int count, Job&& job, Flush&& flush) {
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  const int workers = std::max(1, std::min({count, hw > 0 ? hw : 2, 16}));
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::vector<char> done(count, 0);
  std::mutex flush_mutex;
  int flushed = 0;

  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        job(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(flush_mutex);
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
      std::lock_guard<std::mutex> lock(flush_mutex);
      done[i] = 1;
      while (flushed < count && done[flushed]) flush(flushed++);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failed.load()) std::rethrow_exception(error);
}

}  // namespace

LogLogFit fit_loglog(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw BadInput("log-log fit needs at least two points");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double k = static_cast<double>(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw BadInput("log-log fit needs positive values");
    }
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  LogLogFit fit;
  fit.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / k;
  return fit;
}

ScalingReport sweep(const DirectedGraph& g, const std::string& env_spec,
                    std::span<const int64_t> t_grid, int num_seeds, uint64_t base_seed,
                    const std::string& flush_dir) {
  if (t_grid.size() < 4) throw BadInput("sweep needs at least 4 grid points");
  for (size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < 1) throw BadInput("sweep horizons must be positive");
    if (i > 0 && t_grid[i] <= t_grid[i - 1]) {
      throw BadInput("sweep grid must be strictly increasing");
    }
  }
  if (num_seeds < 30) throw BadInput("sweep needs at least 30 seeds");

  const DominationSolution primal = solve_primal(g);
  std::vector<PolicyConfig> configs;
  configs.reserve(t_grid.size());
  for (int64_t horizon : t_grid) configs.push_back(make_config(g, horizon, primal));

  const int total = static_cast<int>(t_grid.size()) * num_seeds;
  std::vector<double> finals(total, 0.0);

  std::ofstream flush_file;
  if (!flush_dir.empty()) {
    std::filesystem::create_directories(flush_dir);
    flush_file.open(std::filesystem::path(flush_dir) / "sweep_episodes.csv");
    flush_file << "T,seed,final_regret\n";
  }

  parallel_for(
      total,
      [&](int i) {
        const int ti = i / num_seeds;
        const int si = i % num_seeds;
        const uint64_t master = episode_seed(base_seed, si);
        finals[i] =
            run_one(g, configs[ti], env_spec, t_grid[ti], master).final_regret;
      },
      [&](int i) {
        if (!flush_file.is_open()) return;
        const int ti = i / num_seeds;
        const int si = i % num_seeds;
        flush_file << t_grid[ti] << "," << episode_seed(base_seed, si) << ","
                   << fmt_double(finals[i]) << "\n";
        flush_file.flush();
      });

  ScalingReport report;
  report.t_grid.assign(t_grid.begin(), t_grid.end());
  report.num_seeds = num_seeds;
  report.env_spec = env_spec;
  std::vector<double> xs, ys;
  for (size_t ti = 0; ti < t_grid.size(); ++ti) {
    std::span<const double> block(finals.data() + ti * num_seeds, num_seeds);
    const MeanStderr ms = mean_stderr(block);
    report.mean_final_regret.push_back(ms.mean);
    report.stderr_final_regret.push_back(ms.se);
    if (!(ms.mean > 0.0)) {
      throw ContractViolation("mean final regret is not positive; log-log fit undefined");
    }
    xs.push_back(static_cast<double>(t_grid[ti]));
    ys.push_back(ms.mean);
  }
  const LogLogFit fit = fit_loglog(xs, ys);
  report.slope = fit.slope;
  report.intercept = fit.intercept;
  return report;
}

CompareReport compare_exploration(const DirectedGraph& g, const std::string& env_spec,
                                  int64_t horizon, int num_seeds, uint64_t base_seed) {
  if (num_seeds < 30) throw BadInput("compare needs at least 30 seeds");
  const DominationSolution primal = solve_primal(g);
  const PolicyConfig fractional = make_config(g, horizon, primal);

  const IntegralCover cover = integral_delta(g);
  PolicyConfig integral = fractional;
  integral.delta_star = static_cast<double>(cover.value);
  integral.exploration.assign(g.vertex_count(), 0.0);
  for (int v : cover.set) {
    integral.exploration[v] = 1.0 / static_cast<double>(cover.set.size());
  }
  {
    // Baseline tuning uses the integral dominating-set size in the formulas.
    DominationSolution as_primal;
    as_primal.x.assign(g.vertex_count(), 0.0);
    for (int v : cover.set) as_primal.x[v] = 1.0;
    as_primal.value = static_cast<double>(cover.value);
    const PolicyConfig tuned = make_config(g, horizon, as_primal);
    integral.gamma = tuned.gamma;
    integral.eta = tuned.eta;
    integral.outside_guarantee_regime = tuned.outside_guarantee_regime;
  }

  std::vector<double> frac(num_seeds, 0.0), integ(num_seeds, 0.0);
  parallel_for(
      2 * num_seeds,
      [&](int i) {
        const int si = i / 2;
        const uint64_t master = episode_seed(base_seed, si);
        if (i % 2 == 0) {
          frac[si] = run_one(g, fractional, env_spec, horizon, master).final_regret;
        } else {
          integ[si] = run_one(g, integral, env_spec, horizon, master).final_regret;
        }
      },
      [](int) {});

  CompareReport report;
  report.horizon = horizon;
  report.num_seeds = num_seeds;
  const MeanStderr f = mean_stderr(frac);
  const MeanStderr i = mean_stderr(integ);
  report.fractional_mean = f.mean;
  report.fractional_stderr = f.se;
  report.integral_mean = i.mean;
  report.integral_stderr = i.se;
  std::vector<double> diff(num_seeds, 0.0);
  for (int s = 0; s < num_seeds; ++s) diff[s] = frac[s] - integ[s];
  const MeanStderr d = mean_stderr(diff);
  report.difference_mean = d.mean;
  report.difference_stderr = d.se;
  report.delta_star = primal.value;
  report.delta = cover.value;
  report.delta_exact = cover.exact;
  return report;
}

ParamsReport report_params(const DirectedGraph& g) {
  ParamsReport report;
  report.gap = gap_report(g);
  report.degeneracy = degeneracy_certificate(g).status;
  report.vertex_count = g.vertex_count();
  report.edge_count = g.edge_count();
  return report;
}

std::string params_to_json(const ParamsReport& report) {
  json j;
  j["observability"] = to_string(report.gap.observability);
  j["delta_star"] = report.gap.delta_star ? json(*report.gap.delta_star) : json(nullptr);
  j["zeta_star"] = report.gap.zeta_star;
  j["delta"] = report.gap.delta ? json(*report.gap.delta) : json(nullptr);
  j["delta_exact"] = report.gap.delta_exact;
  j["zeta"] = report.gap.zeta;
  j["zeta_exact"] = report.gap.zeta_exact;
  j["primal_gap"] = report.gap.primal_gap ? json(*report.gap.primal_gap) : json(nullptr);
  j["dual_gap"] = report.gap.dual_gap ? json(*report.gap.dual_gap) : json(nullptr);
  j["one_degenerate"] = to_string(report.degeneracy);
  j["n"] = report.vertex_count;
  j["edges"] = report.edge_count;
  return j.dump(2) + "\n";
}

std::string round_to_json(const DirectedGraph& g) {
  const IntegralPacking packing = integral_zeta(g);
  const KPackingSet one = greedy_one_packing(g, packing.set);
  json j;
  j["zeta"] = packing.value;
  j["zeta_exact"] = packing.exact;
  j["packing_set"] = packing.set;
  j["one_packing"] = one.vertices;
  j["one_packing_size"] = one.vertices.size();
  j["size_guarantee"] = (packing.value + 2) / 3;  // ceil(zeta / 3)
  return j.dump(2) + "\n";
}

std::string traces_to_csv(std::span<const RegretTrace> traces) {
  std::string out = "seed,t,arm,loss,cum_regret,cum_pseudo_regret\n";
  for (const auto& trace : traces) {
    for (size_t r = 0; r < trace.arms.size(); ++r) {
      out += std::to_string(trace.seed);
      out += ',';
      out += std::to_string(r + 1);
      out += ',';
      out += std::to_string(trace.arms[r]);
      out += ',';
      out += fmt_double(trace.losses[r]);
      out += ',';
      out += fmt_double(trace.cum_regret[r]);
      out += ',';
      out += trace.cum_pseudo_regret.empty() ? "nan" : fmt_double(trace.cum_pseudo_regret[r]);
      out += '\n';
    }
  }
  return out;
}

std::string sweep_to_json(const ScalingReport& report) {
  json j;
  j["t_grid"] = report.t_grid;
  j["mean_final_regret"] = report.mean_final_regret;
  j["stderr_final_regret"] = report.stderr_final_regret;
  j["slope"] = report.slope;
  j["intercept"] = report.intercept;
  j["seeds"] = report.num_seeds;
  j["env"] = report.env_spec;
  return j.dump(2) + "\n";
}

std::string compare_to_json(const CompareReport& report) {
  json j;
  j["T"] = report.horizon;
  j["seeds"] = report.num_seeds;
  j["fractional"] = {{"mean", report.fractional_mean},
                     {"stderr", report.fractional_stderr},
                     {"delta_star", report.delta_star}};
  j["integral"] = {{"mean", report.integral_mean},
                   {"stderr", report.integral_stderr},
                   {"delta", report.delta},
                   {"exact", report.delta_exact}};
  j["difference"] = {{"mean", report.difference_mean}, {"stderr", report.difference_stderr}};
  return j.dump(2) + "\n";
}

std::string run_traces_csv(const DirectedGraph& g, const std::string& env_spec, int64_t horizon,
                           int num_seeds, uint64_t base_seed) {
  if (num_seeds < 1) throw BadInput("need at least one seed");
  const PolicyConfig config = make_config(g, horizon, solve_primal(g));
  std::vector<RegretTrace> traces(num_seeds);
  parallel_for(
      num_seeds,
      [&](int i) {
        traces[i] = run_one(g, config, env_spec, horizon, episode_seed(base_seed, i));
      },
      [](int) {});
  return traces_to_csv(traces);
}

}  // namespace gb
