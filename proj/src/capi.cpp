// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#include "weft.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "json.hpp"

#include "weft/bench.hpp"
#include "weft/checksum.hpp"
#include "weft/loader.hpp"
#include "weft/probe.hpp"

using nlohmann::json;

struct weft_graph {
  weft::Graph g;
  explicit weft_graph(weft::GraphConfig cfg) : g(cfg) {}
};

namespace {

thread_local std::string t_last_error;

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

// Runs the body and folds every failure into (code, t_last_error).
template <class F>
int wrap(F&& body) {
  t_last_error.clear();
  try {
    body();
    return WEFT_OK;
  } catch (const weft::Error& e) {
    t_last_error = e.what();
    return int(e.code());
  } catch (const json::exception& e) {
    t_last_error = std::string("bad json: ") + e.what();
    return WEFT_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return WEFT_ERR_INSUFFICIENT_MEMORY;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return WEFT_ERR_INTERNAL;
  }
}

json parse_or_empty(const char* text) {
  if (!text || !*text) return json::object();
  return json::parse(text);  // json::exception handled by wrap
}

void require(bool ok, const char* what) {
  if (!ok) throw weft::InvalidArgument(what);
}

weft::LoadOptions load_options_from(const json& j) {
  weft::LoadOptions o;
  o.shuffle = j.value("shuffle", o.shuffle);
  o.shuffle_seed = j.value("shuffle_seed", o.shuffle_seed);
  o.weight_seed = j.value("weight_seed", o.weight_seed);
  return o;
}

// Engine + workload settings shared by run/update/sweep config blobs.
struct RunSpec {
  weft::StrategyConfig cfg;
  std::uint32_t threads = 1;
  weft::WorkloadParams params;
  std::string dataset;
  std::size_t batch_size = 0;  // 0: whole stream in one batch
};

RunSpec run_spec_from(const json& j) {
  RunSpec r;
  if (j.contains("strategy"))
    r.cfg.strategy = weft::parse_strategy(j.at("strategy").get<std::string>());
  if (j.contains("partitioner"))
    r.cfg.partitioner =
        weft::parse_partitioner(j.at("partitioner").get<std::string>());
  if (j.contains("scheduler"))
    r.cfg.scheduler =
        weft::parse_scheduler(j.at("scheduler").get<std::string>());
  r.cfg.coroutines = j.value("coroutines", r.cfg.coroutines);
  r.cfg.dense_threshold = j.value("dense_threshold", r.cfg.dense_threshold);
  r.cfg.hot_prefix = j.value("hot_prefix", r.cfg.hot_prefix);
  r.threads = j.value("threads", r.threads);
  r.params.source = j.value("source", r.params.source);
  r.params.iters = j.value("iters", r.params.iters);
  r.params.damping = j.value("damping", r.params.damping);
  r.params.fraction = j.value("fraction", r.params.fraction);
  r.params.seed = j.value("seed", r.params.seed);
  r.dataset = j.value("dataset", r.dataset);
  r.batch_size = j.value("batch_size", r.batch_size);
  return r;
}

json config_to_json(const weft::StrategyConfig& c) {
  return json{{"strategy", std::string(weft::strategy_name(c.strategy))},
              {"partitioner",
               std::string(weft::partitioner_name(c.partitioner))},
              {"scheduler", std::string(weft::scheduler_name(c.scheduler))},
              {"coroutines", c.coroutines},
              {"dense_threshold", c.dense_threshold},
              {"hot_prefix", c.hot_prefix}};
}

std::vector<weft::UpdateOp> stream_from(const json& j,
                                        std::size_t fallback_vertices) {
  if (j.contains("path"))
    return weft::parse_update_stream_file(j.at("path").get<std::string>());
  std::size_t ops = j.value("ops", std::size_t(0));
  require(ops > 0, "stream needs ops > 0 or a path");
  std::size_t vertices = j.value("vertices", std::size_t(0));
  if (vertices == 0) vertices = fallback_vertices;
  return weft::make_update_stream(ops, vertices, j.value("seed", 1ull));
}

}  // namespace

extern "C" {

const char* weft_version(void) { return "1.0.0"; }

const char* weft_last_error(void) { return t_last_error.c_str(); }

void weft_free(char* p) { std::free(p); }

int weft_graph_create(const char* options_json, weft_graph** out) {
  return wrap([&] {
    require(out != nullptr, "out handle is null");
    json j = parse_or_empty(options_json);
    weft::GraphConfig cfg;
    cfg.chunk_lines = j.value("chunk_lines", cfg.chunk_lines);
    cfg.node_lines = j.value("node_lines", cfg.node_lines);
    if (j.contains("property_mode")) {
      std::string m = j.at("property_mode").get<std::string>();
      require(m == "inline" || m == "parallel", "unknown property_mode");
      cfg.property_mode = m == "inline" ? weft::PropertyMode::kInline
                                        : weft::PropertyMode::kParallel;
    }
    *out = new weft_graph(cfg);
  });
}

void weft_graph_destroy(weft_graph* g) { delete g; }

int weft_load_edge_list(weft_graph* g, const char* path, const char* opts_json,
                        char** stats_json_out) {
  return wrap([&] {
    require(g != nullptr, "graph handle is null");
    require(path != nullptr, "path is null");
    weft::LoadOptions opts = load_options_from(parse_or_empty(opts_json));
    weft::LoadStats st = weft::load_edge_list_file(g->g, path, opts);
    if (stats_json_out) {
      json j{{"lines", st.lines},           {"comments", st.comments},
             {"records", st.records},       {"upserts", st.upserts},
             {"synthesized", st.synthesized}, {"vertices", st.vertices},
             {"wall_ns", st.wall_ns}};
      *stats_json_out = dup_string(j.dump());
    }
  });
}

uint64_t weft_graph_checksum(const weft_graph* g) {
  return g ? weft::graph_checksum(g->g) : 0;
}

size_t weft_live_vertices(const weft_graph* g) {
  return g ? g->g.live_vertices() : 0;
}

size_t weft_edge_count(const weft_graph* g) {
  return g ? g->g.edge_count() : 0;
}

int weft_run_workload(const weft_graph* g, const char* workload,
                      const char* config_json, char** report_json_out) {
  return wrap([&] {
    require(g != nullptr, "graph handle is null");
    require(workload != nullptr, "workload is null");
    require(report_json_out != nullptr, "report out is null");
    RunSpec spec = run_spec_from(parse_or_empty(config_json));
    weft::RunReport r = weft::run_workload(g->g, workload, spec.cfg,
                                           spec.threads, spec.params,
                                           spec.dataset);
    *report_json_out = dup_string(weft::report_to_json(r));
  });
}

int weft_update_stream(weft_graph* g, const char* stream_json,
                       const char* config_json, char** report_json_out) {
  return wrap([&] {
    require(g != nullptr, "graph handle is null");
    require(stream_json != nullptr, "stream spec is null");
    require(report_json_out != nullptr, "report out is null");
    RunSpec spec = run_spec_from(parse_or_empty(config_json));
    std::vector<weft::UpdateOp> stream =
        stream_from(json::parse(stream_json), g->g.live_vertices());
    std::size_t batch = spec.batch_size
                            ? spec.batch_size
                            : std::max<std::size_t>(stream.size(), 1);
    weft::RunReport r = weft::update_stream_driver(g->g, stream, batch,
                                                   spec.cfg, spec.threads,
                                                   spec.dataset);
    *report_json_out = dup_string(weft::report_to_json(r));
  });
}

int weft_sweep(const char* spec_json, char** csv_out,
               char** reports_json_out) {
  return wrap([&] {
    require(spec_json != nullptr, "sweep spec is null");
    json j = json::parse(spec_json);

    weft::SweepOptions opts;
    opts.workload = j.value("workload", opts.workload);
    opts.dataset = j.value("dataset", std::string());
    RunSpec base = run_spec_from(j.value("base", json::object()));
    opts.base = base.cfg;
    opts.params = run_spec_from(j.value("params", json::object())).params;
    if (j.contains("axes")) {
      const json& a = j.at("axes");
      for (const json& s : a.value("strategies", json::array()))
        opts.axes.strategies.push_back(
            weft::parse_strategy(s.get<std::string>()));
      for (const json& m : a.value("coroutines", json::array()))
        opts.axes.coroutines.push_back(m.get<std::uint32_t>());
      for (const json& t : a.value("threads", json::array()))
        opts.axes.threads.push_back(t.get<std::uint32_t>());
      for (const json& b : a.value("batch_sizes", json::array()))
        opts.axes.batch_sizes.push_back(b.get<std::size_t>());
    }
    if (opts.axes.threads.empty() && base.threads != 1)
      opts.axes.threads = {base.threads};

    require(!opts.dataset.empty(), "sweep needs a dataset path");
    weft::LoadOptions load =
        load_options_from(j.value("load", json::object()));
    auto make_graph = [&]() {
      auto g = std::make_unique<weft::Graph>();
      weft::load_edge_list_file(*g, opts.dataset, load);
      return g;
    };

    if (opts.workload == "update") {
      json stream_spec = j.value("stream", json::object());
      std::size_t fallback = 0;
      if (!stream_spec.contains("path") &&
          stream_spec.value("vertices", std::size_t(0)) == 0)
        fallback = make_graph()->live_vertices();  // size of the vertex pool
      opts.stream = stream_from(stream_spec, fallback);
    }

    std::vector<weft::RunReport> rows = weft::sweep(make_graph, opts);
    if (csv_out) *csv_out = dup_string(weft::sweep_csv(rows));
    if (reports_json_out) {
      json arr = json::array();
      for (const weft::RunReport& r : rows)
        arr.push_back(json::parse(weft::report_to_json(r)));
      *reports_json_out = dup_string(arr.dump());
    }
  });
}

int weft_probe(const char* opts_json, char** result_json_out) {
  return wrap([&] {
    require(result_json_out != nullptr, "result out is null");
    json j = parse_or_empty(opts_json);
    weft::ProbeOptions opts;
    if (j.contains("m_grid")) {
      opts.m_grid.clear();
      for (const json& m : j.at("m_grid"))
        opts.m_grid.push_back(m.get<std::uint32_t>());
    }
    opts.trials = j.value("trials", opts.trials);
    opts.working_set_bytes =
        j.value("working_set_bytes", opts.working_set_bytes);
    opts.seed = j.value("seed", opts.seed);
    weft::ProbeResult r = weft::probe_config(opts);
    *result_json_out = dup_string(weft::probe_to_json(r));
  });
}

int weft_tune(const char* probe_json, const char* task_class,
              char** config_json_out) {
  return wrap([&] {
    require(probe_json != nullptr, "probe json is null");
    require(task_class != nullptr, "task class is null");
    require(config_json_out != nullptr, "config out is null");
    weft::ProbeResult probe = weft::probe_from_json(probe_json);
    weft::StrategyConfig cfg =
        weft::tune(weft::parse_task_class(task_class), probe);
    *config_json_out = dup_string(config_to_json(cfg).dump());
  });
}

}  // extern "C"
