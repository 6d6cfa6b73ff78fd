#include "graphbandit/graphbandit.h"

#include <cstdlib>
#include <cstring>
#include <span>
#include <string>

#include "errors.hpp"
#include "families.hpp"
#include "graph.hpp"
#include "harness.hpp"

struct gb_graph {
  gb::DirectedGraph rep;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_err(char** err, const std::string& message) {
  if (err) *err = dup_string(message);
}

template <class Fn>
gb_status guarded(char** err, Fn&& fn) {
  try {
    fn();
    return GB_OK;
  } catch (const gb::BadInput& e) {
    set_err(err, e.what());
    return GB_ERROR_BAD_INPUT;
  } catch (const gb::ContractViolation& e) {
    set_err(err, e.what());
    return GB_ERROR_CONTRACT;
  } catch (const std::exception& e) {
    set_err(err, e.what());
    return GB_ERROR_CONTRACT;
  }
}

}  // namespace

extern "C" {

gb_status gb_graph_parse(const char* text, gb_graph** out, char** err) {
  if (!text || !out) {
    set_err(err, "null argument");
    return GB_ERROR_BAD_INPUT;
  }
  return guarded(err, [&] { *out = new gb_graph{gb::parse_graph(text)}; });
}

gb_status gb_graph_named(const char* name, gb_graph** out, char** err) {
  if (!name || !out) {
    set_err(err, "null argument");
    return GB_ERROR_BAD_INPUT;
  }
  return guarded(err, [&] { *out = new gb_graph{gb::gen_named(name)}; });
}

void gb_graph_free(gb_graph* g) { delete g; }

int32_t gb_graph_vertex_count(const gb_graph* g) { return g ? g->rep.vertex_count() : 0; }

int64_t gb_graph_edge_count(const gb_graph* g) { return g ? g->rep.edge_count() : 0; }

gb_status gb_graph_serialize(const gb_graph* g, char** out_text, char** err) {
  if (!g || !out_text) {
    set_err(err, "null argument");
    return GB_ERROR_BAD_INPUT;
  }
  return guarded(err, [&] { *out_text = dup_string(gb::serialize_graph(g->rep)); });
}

gb_status gb_params_json(const gb_graph* g, char** out_json, char** err) {
  if (!g || !out_json) {
    set_err(err, "null argument");
    return GB_ERROR_BAD_INPUT;
  }
  return guarded(err, [&] { *out_json = dup_string(gb::params_to_json(gb::report_params(g->rep))); });
}

gb_status gb_round_json(const gb_graph* g, char** out_json, char** err) {
  if (!g || !out_json) {
    set_err(err, "null argument");
    return GB_ERROR_BAD_INPUT;
  }
  return guarded(err, [&] { *out_json = dup_string(gb::round_to_json(g->rep)); });
}

gb_status gb_run_csv(const gb_graph* g, const char* env_spec, int64_t horizon, int32_t num_seeds,
                     uint64_t seed, char** out_csv, char** err) {
  if (!g || !env_spec || !out_csv) {
    set_err(err, "null argument");
    return GB_ERROR_BAD_INPUT;
  }
  return guarded(err, [&] {
    *out_csv = dup_string(gb::run_traces_csv(g->rep, env_spec, horizon, num_seeds, seed));
  });
}

gb_status gb_sweep_json(const gb_graph* g, const char* env_spec, const int64_t* t_grid,
                        int32_t t_grid_len, int32_t num_seeds, uint64_t seed,
                        const char* flush_dir, char** out_json, char** err) {
  if (!g || !env_spec || !t_grid || t_grid_len < 1 || !out_json) {
    set_err(err, "null argument");
    return GB_ERROR_BAD_INPUT;
  }
  return guarded(err, [&] {
    const std::span<const int64_t> grid(t_grid, static_cast<size_t>(t_grid_len));
    const gb::ScalingReport report = gb::sweep(g->rep, env_spec, grid, num_seeds, seed,
                                               flush_dir ? flush_dir : "");
    *out_json = dup_string(gb::sweep_to_json(report));
  });
}

gb_status gb_compare_json(const gb_graph* g, const char* env_spec, int64_t horizon,
                          int32_t num_seeds, uint64_t seed, char** out_json, char** err) {
  if (!g || !env_spec || !out_json) {
    set_err(err, "null argument");
    return GB_ERROR_BAD_INPUT;
  }
  return guarded(err, [&] {
    const gb::CompareReport report =
        gb::compare_exploration(g->rep, env_spec, horizon, num_seeds, seed);
    *out_json = dup_string(gb::compare_to_json(report));
  });
}

void gb_string_free(char* s) { std::free(s); }

const char* gb_version(void) { return "0.1.0"; }

}  // extern "C"
