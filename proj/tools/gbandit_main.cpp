// gbandit: command-line harness over the graphbandit C API.
//
// Subcommands: params, round, run, sweep, compare. Graph arguments accept a
// path to an edge-list file or "name:<catalogue-entry>". Exit codes: 0 ok,
// 1 contract violation, 2 bad input.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphbandit/graphbandit.h"

namespace {

struct Options {
  uint64_t seed = 1;
  std::string out_dir;
  std::string format = "json";
  std::string graph;
  std::string env;
  int64_t horizon = 0;
  int seeds = 1;
  std::vector<int64_t> t_grid;
};

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& message) : std::runtime_error(message), code(code) {}
  int code;
};

std::string take_string(char* owned) {
  std::string s = owned ? owned : "";
  gb_string_free(owned);
  return s;
}

[[noreturn]] void raise(gb_status status, char* err) {
  const std::string message = take_string(err);
  throw CliError(static_cast<int>(status), message.empty() ? "unknown error" : message);
}

using GraphPtr = std::unique_ptr<gb_graph, decltype(&gb_graph_free)>;

GraphPtr load_graph(const std::string& spec) {
  gb_graph* g = nullptr;
  char* err = nullptr;
  gb_status status;
  if (spec.rfind("name:", 0) == 0) {
    status = gb_graph_named(spec.substr(5).c_str(), &g, &err);
  } else {
    std::ifstream in(spec);
    if (!in) throw CliError(2, "cannot open graph file '" + spec + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    status = gb_graph_parse(buffer.str().c_str(), &g, &err);
  }
  if (status != GB_OK) raise(status, err);
  return GraphPtr(g, &gb_graph_free);
}

void emit(const Options& opts, const std::string& filename, const std::string& payload) {
  std::cout << payload;
  if (!opts.out_dir.empty()) {
    std::filesystem::create_directories(opts.out_dir);
    std::ofstream out(std::filesystem::path(opts.out_dir) / filename, std::ios::binary);
    out << payload;
  }
}

// The optional JSON config file mirrors the flags; explicit flags win.
void apply_config(const std::string& path, Options& opts) {
  std::ifstream in(path);
  if (!in) throw CliError(2, "cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw CliError(2, std::string("bad config file: ") + e.what());
  }
  if (j.contains("seed")) opts.seed = j["seed"].get<uint64_t>();
  if (j.contains("out")) opts.out_dir = j["out"].get<std::string>();
  if (j.contains("format")) opts.format = j["format"].get<std::string>();
  if (j.contains("graph")) opts.graph = j["graph"].get<std::string>();
  if (j.contains("env")) opts.env = j["env"].get<std::string>();
  if (j.contains("T")) opts.horizon = j["T"].get<int64_t>();
  if (j.contains("seeds")) opts.seeds = j["seeds"].get<int>();
  if (j.contains("T_grid")) opts.t_grid = j["T_grid"].get<std::vector<int64_t>>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bandits with graph feedback: parameters, rounding, regret experiments"};
  app.require_subcommand(1);

  Options opts;
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file mirroring the flags");
  app.add_option("--seed", opts.seed, "base seed; episode e uses seed + e");
  app.add_option("--out", opts.out_dir, "directory for output files");
  app.add_option("--format", opts.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* params = app.add_subcommand("params", "graph parameters as JSON");
  std::string params_graph;
  params->add_option("graph", params_graph, "graph file or name:<entry>")->required();

  auto* round = app.add_subcommand("round", "vertex packing witness and 1-packing refinement");
  std::string round_graph;
  round->add_option("graph", round_graph, "graph file or name:<entry>")->required();

  auto* run = app.add_subcommand("run", "per-seed regret traces as CSV");
  run->add_option("--graph", opts.graph, "graph file or name:<entry>");
  run->add_option("--env", opts.env, "environment spec");
  run->add_option("--T", opts.horizon, "horizon");
  run->add_option("--seeds", opts.seeds, "number of episodes");

  auto* sweep = app.add_subcommand("sweep", "regret scaling over a horizon grid");
  sweep->add_option("--graph", opts.graph, "graph file or name:<entry>");
  sweep->add_option("--env", opts.env, "environment spec");
  sweep->add_option("--T-grid", opts.t_grid, "horizons, strictly increasing (>= 4)");
  sweep->add_option("--seeds", opts.seeds, "seeds per grid point (>= 30)");

  auto* compare = app.add_subcommand("compare", "LP exploration vs integral dominating set");
  compare->add_option("--graph", opts.graph, "graph file or name:<entry>");
  compare->add_option("--env", opts.env, "environment spec");
  compare->add_option("--T", opts.horizon, "horizon");
  compare->add_option("--seeds", opts.seeds, "number of paired episodes (>= 30)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) {
      Options defaults;
      apply_config(config_path, defaults);
      // Flags that were not given on the command line fall back to the config.
      if (app.count("--seed") == 0) opts.seed = defaults.seed;
      if (app.count("--out") == 0) opts.out_dir = defaults.out_dir;
      if (app.count("--format") == 0) opts.format = defaults.format;
      auto* sub = app.get_subcommands().front();
      auto unset = [&](const std::string& flag) {
        const CLI::Option* option = sub->get_option_no_throw(flag);
        return option != nullptr && option->count() == 0;
      };
      if (unset("--graph") && opts.graph.empty()) opts.graph = defaults.graph;
      if (unset("--env") && opts.env.empty()) opts.env = defaults.env;
      if (unset("--T") && opts.horizon == 0) opts.horizon = defaults.horizon;
      if (unset("--seeds") && opts.seeds == 1) opts.seeds = defaults.seeds;
      if (unset("--T-grid") && opts.t_grid.empty()) opts.t_grid = defaults.t_grid;
    }

    char* err = nullptr;
    char* out = nullptr;
    if (params->parsed()) {
      auto g = load_graph(params_graph);
      if (gb_status s = gb_params_json(g.get(), &out, &err); s != GB_OK) raise(s, err);
      emit(opts, "params.json", take_string(out));
    } else if (round->parsed()) {
      auto g = load_graph(round_graph);
      if (gb_status s = gb_round_json(g.get(), &out, &err); s != GB_OK) raise(s, err);
      emit(opts, "round.json", take_string(out));
    } else if (run->parsed()) {
      if (opts.graph.empty() || opts.env.empty() || opts.horizon < 1) {
        throw CliError(2, "run needs --graph, --env and --T");
      }
      auto g = load_graph(opts.graph);
      if (gb_status s = gb_run_csv(g.get(), opts.env.c_str(), opts.horizon, opts.seeds,
                                   opts.seed, &out, &err);
          s != GB_OK) {
        raise(s, err);
      }
      emit(opts, "run.csv", take_string(out));
    } else if (sweep->parsed()) {
      if (opts.graph.empty() || opts.env.empty() || opts.t_grid.empty()) {
        throw CliError(2, "sweep needs --graph, --env and --T-grid");
      }
      auto g = load_graph(opts.graph);
      const char* flush = opts.out_dir.empty() ? nullptr : opts.out_dir.c_str();
      if (gb_status s = gb_sweep_json(g.get(), opts.env.c_str(), opts.t_grid.data(),
                                      static_cast<int32_t>(opts.t_grid.size()), opts.seeds,
                                      opts.seed, flush, &out, &err);
          s != GB_OK) {
        raise(s, err);
      }
      emit(opts, "sweep.json", take_string(out));
    } else if (compare->parsed()) {
      if (opts.graph.empty() || opts.env.empty() || opts.horizon < 1) {
        throw CliError(2, "compare needs --graph, --env and --T");
      }
      auto g = load_graph(opts.graph);
      if (gb_status s = gb_compare_json(g.get(), opts.env.c_str(), opts.horizon, opts.seeds,
                                        opts.seed, &out, &err);
          s != GB_OK) {
        raise(s, err);
      }
      emit(opts, "compare.json", take_string(out));
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
