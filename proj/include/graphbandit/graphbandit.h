/*
 * graphbandit - bandits with graph feedback.
 *
 * C API over the C++ core. Handles are opaque; every function that can fail
 * returns a gb_status and, on failure, an error message in *err (free with
 * gb_string_free). Returned strings are heap-allocated and owned by the
 * caller.
 */

#ifndef GRAPHBANDIT_H
#define GRAPHBANDIT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gb_status {
  GB_OK = 0,
  GB_ERROR_CONTRACT = 1, /* runtime contract violated (loss range, internal checks) */
  GB_ERROR_BAD_INPUT = 2 /* malformed input, unknown name, infeasible precondition */
} gb_status;

typedef struct gb_graph gb_graph;

/* Graph lifecycle. Text format: first line "n", then "u v" per edge,
 * 0-indexed; '#' starts a comment line; duplicate edges are rejected. */
gb_status gb_graph_parse(const char* text, gb_graph** out, char** err);
gb_status gb_graph_named(const char* name, gb_graph** out, char** err);
void gb_graph_free(gb_graph* g);

int32_t gb_graph_vertex_count(const gb_graph* g);
int64_t gb_graph_edge_count(const gb_graph* g);
gb_status gb_graph_serialize(const gb_graph* g, char** out_text, char** err);

/* Graph parameters as JSON: delta_star, zeta_star, delta, zeta, primal_gap,
 * dual_gap, observability, one_degenerate, plus exactness flags. */
gb_status gb_params_json(const gb_graph* g, char** out_json, char** err);

/* Maximum vertex packing set and its greedy 1-packing refinement as JSON. */
gb_status gb_round_json(const gb_graph* g, char** out_json, char** err);

/* Regret episodes as CSV (seed,t,arm,loss,cum_regret,cum_pseudo_regret).
 * Episode e runs with master seed `seed + e`. Environment specs:
 *   hard:S=<i;j;...>,j=<special>,eps=<float|pack|log>[,k=<int>]
 *   bernoulli:<p0;p1;...> | const:<v0;v1;...> | file:<path>             */
gb_status gb_run_csv(const gb_graph* g, const char* env_spec, int64_t horizon,
                     int32_t num_seeds, uint64_t seed, char** out_csv, char** err);

/* Regret scaling over a horizon grid (>= 4 increasing points, >= 30 seeds);
 * JSON report with per-point means, standard errors and the log-log slope.
 * flush_dir may be NULL; when set, per-episode results are appended there. */
gb_status gb_sweep_json(const gb_graph* g, const char* env_spec, const int64_t* t_grid,
                        int32_t t_grid_len, int32_t num_seeds, uint64_t seed,
                        const char* flush_dir, char** out_json, char** err);

/* Paired comparison of LP-based vs integral dominating-set exploration. */
gb_status gb_compare_json(const gb_graph* g, const char* env_spec, int64_t horizon,
                          int32_t num_seeds, uint64_t seed, char** out_json, char** err);

void gb_string_free(char* s);
const char* gb_version(void);

#ifdef __cplusplus
}
#endif

#endif /* GRAPHBANDIT_H */
