/* Copyright (c) the weft authors. */
/* SPDX-License-Identifier: Apache-2.0 */

/* Public C interface to the weft dynamic-graph engine. Handles are opaque,
 * every entry point returns an integer code (WEFT_OK on success), and all
 * structured inputs and outputs travel as JSON strings. Strings returned
 * through out-parameters are heap-allocated; release them with weft_free.
 * Handles are safe to share across threads for reads; mutating calls on one
 * graph must not overlap other calls on the same graph. */

#ifndef WEFT_H
#define WEFT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct weft_graph weft_graph;

enum {
  WEFT_OK = 0,
  WEFT_ERR_DUPLICATE_EXTERNAL_ID = 1,
  WEFT_ERR_UNKNOWN_VERTEX = 2,
  WEFT_ERR_INVALID_TASK_COUNT = 3,
  WEFT_ERR_TASK_PANICKED = 4,
  WEFT_ERR_INVALID_SUBCHAIN = 5,
  WEFT_ERR_PARSE = 6,
  WEFT_ERR_NEGATIVE_WEIGHT = 7,
  WEFT_ERR_INSUFFICIENT_MEMORY = 8,
  WEFT_ERR_INVALID_ARGUMENT = 9,
  WEFT_ERR_IO = 10,
  WEFT_ERR_INTERNAL = -1
};

/* Library version, e.g. "1.0.0". Static storage, do not free. */
const char* weft_version(void);

/* Message for the calling thread's most recent failure; "" when the last
 * call succeeded. Valid until the thread's next weft call, do not free. */
const char* weft_last_error(void);

/* Releases any string returned through a char** out-parameter. */
void weft_free(char* p);

/* ---- graph lifecycle ---------------------------------------------------- */

/* options_json (NULL for defaults):
 *   {"chunk_lines":4, "node_lines":4, "property_mode":"inline"|"parallel"} */
int weft_graph_create(const char* options_json, weft_graph** out);
void weft_graph_destroy(weft_graph* g);

/* Loads a "src dst [weight]" edge-list text file. opts_json (NULL ok):
 *   {"shuffle":false, "shuffle_seed":0, "weight_seed":1}
 * stats_json_out (optional) receives counts: lines, comments, records,
 * upserts, synthesized, vertices, wall_ns. */
int weft_load_edge_list(weft_graph* g, const char* path,
                        const char* opts_json, char** stats_json_out);

uint64_t weft_graph_checksum(const weft_graph* g);
size_t weft_live_vertices(const weft_graph* g);
size_t weft_edge_count(const weft_graph* g);

/* ---- workloads ----------------------------------------------------------- */

/* Runs a read-only workload: bfs | sssp | pagerank | cc | lp | queries.
 * config_json (NULL for defaults) may set:
 *   strategy            "all-hard"|"all-soft"|"hybrid-block-size"|"hybrid-hotness"
 *   partitioner         "chain"|"vertex-range"
 *   scheduler           "polling"|"trimmed-polling"
 *   coroutines          tasks per worker thread
 *   dense_threshold     dense-frontier cutover fraction
 *   hot_prefix          soft steps per lookup under hybrid-hotness
 *   threads, source, iters, damping, fraction, seed, dataset
 * report_json_out receives the full run report (status "error" reports
 * workload failures; the call itself still returns WEFT_OK then). */
int weft_run_workload(const weft_graph* g, const char* workload,
                      const char* config_json, char** report_json_out);

/* Applies an update stream in batches. stream_json selects the source:
 *   {"ops":10000, "vertices":0, "seed":1}   synthetic (0 vertices = live count)
 *   {"path":"updates.txt"}                  text stream file
 * config_json as above plus "batch_size" (default: whole stream at once). */
int weft_update_stream(weft_graph* g, const char* stream_json,
                       const char* config_json, char** report_json_out);

/* Runs a configuration sweep over a dataset named in the request JSON:
 *   {"workload":"queries", "dataset":"edges.txt",
 *    "load":{...},                        load opts as in weft_load_edge_list
 *    "axes":{"strategies":[...], "coroutines":[...],
 *            "threads":[...], "batch_sizes":[...]},
 *    "base":{...},                        config defaults as above
 *    "params":{...},                      workload knobs as above
 *    "stream":{"ops":...,"seed":...}}     update workload input
 * csv_out (optional) receives the summary table, reports_json_out (optional)
 * a JSON array of run reports. */
int weft_sweep(const char* spec_json, char** csv_out, char** reports_json_out);

/* ---- machine probe -------------------------------------------------------- */

/* Measures miss cost, switch cost, per-layout prefetch hit rates, and the
 * best live-task count. opts_json (NULL for defaults):
 *   {"m_grid":[1,2,4,8,16,32], "trials":3, "working_set_bytes":0, "seed":1}
 * result_json_out receives the probe result (round-trips as a --config file). */
int weft_probe(const char* opts_json, char** result_json_out);

/* Derives an engine configuration from a probe result for one task class:
 * full-scan | frontier | point-query | batch-update. */
int weft_tune(const char* probe_json, const char* task_class,
              char** config_json_out);

#ifdef __cplusplus
}
#endif

#endif /* WEFT_H */
