// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to the engine exclusively through the public
// C interface in weft.h; configuration travels as JSON strings built here.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "weft.h"

using nlohmann::json;

namespace {

struct GraphHandle {
  weft_graph* g = nullptr;
  GraphHandle() = default;
  GraphHandle(GraphHandle&& o) noexcept : g(o.g) { o.g = nullptr; }
  GraphHandle(const GraphHandle&) = delete;
  GraphHandle& operator=(const GraphHandle&) = delete;
  GraphHandle& operator=(GraphHandle&&) = delete;
  ~GraphHandle() { weft_graph_destroy(g); }
};

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { weft_free(p); }
  std::string str() const { return p ? p : ""; }
};

[[noreturn]] void fail(const std::string& context) {
  std::cerr << "error: " << context;
  const char* detail = weft_last_error();
  if (detail && *detail) std::cerr << ": " << detail;
  std::cerr << '\n';
  std::exit(1);
}

void check(int rc, const std::string& context) {
  if (rc != WEFT_OK) fail(context);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail("cannot write " + path);
  out << text;
}

void append_line(const std::string& path, const std::string& line) {
  std::ofstream out(path, std::ios::app);
  if (!out) fail("cannot append to " + path);
  out << line << '\n';
}

// Options every graph-touching subcommand shares.
struct CommonOpts {
  std::string input;
  std::string report;
  std::string config;  // probe result file driving auto-configuration
  std::string strategy, partitioner, scheduler, property_mode = "inline";
  std::uint32_t threads = 1, coroutines = 8;
  std::uint64_t seed = 1;
  bool shuffle = false;
  std::uint64_t shuffle_seed = 0, weight_seed = 1;

  CLI::Option *strategy_opt = nullptr, *partitioner_opt = nullptr,
              *scheduler_opt = nullptr, *threads_opt = nullptr,
              *coroutines_opt = nullptr, *seed_opt = nullptr;
};

void add_graph_flags(CLI::App* sub, CommonOpts& o, bool input_required) {
  CLI::Option* in = sub->add_option("--input", o.input, "edge list file");
  if (input_required) in->required();
  sub->add_flag("--shuffle", o.shuffle, "shuffle edges before insertion");
  sub->add_option("--shuffle-seed", o.shuffle_seed, "shuffle permutation seed");
  sub->add_option("--weight-seed", o.weight_seed,
                  "seed for synthesized weights");
  sub->add_option("--property-mode", o.property_mode,
                  "edge property placement: inline | parallel");
}

void add_engine_flags(CLI::App* sub, CommonOpts& o) {
  o.strategy_opt = sub->add_option(
      "--strategy", o.strategy,
      "all-hard | all-soft | hybrid-block-size | hybrid-hotness");
  o.partitioner_opt = sub->add_option("--partitioner", o.partitioner,
                                      "chain | vertex-range");
  o.scheduler_opt = sub->add_option("--scheduler", o.scheduler,
                                    "polling | trimmed-polling");
  o.threads_opt = sub->add_option("--threads", o.threads, "worker threads");
  o.coroutines_opt =
      sub->add_option("--coroutines", o.coroutines, "live tasks per thread");
  o.seed_opt = sub->add_option("--seed", o.seed, "workload seed");
  sub->add_option("--config", o.config,
                  "probe result file; derives the engine configuration");
  sub->add_option("--report", o.report, "append the run report to this file");
}

GraphHandle open_graph(const CommonOpts& o, bool verbose = true) {
  json gopts{{"property_mode", o.property_mode}};
  GraphHandle h;
  check(weft_graph_create(gopts.dump().c_str(), &h.g), "create graph");
  if (!o.input.empty()) {
    json lopts{{"shuffle", o.shuffle},
               {"shuffle_seed", o.shuffle_seed},
               {"weight_seed", o.weight_seed}};
    OwnedString stats;
    check(weft_load_edge_list(h.g, o.input.c_str(), lopts.dump().c_str(),
                              &stats.p),
          "load " + o.input);
    if (verbose) std::cerr << "loaded " << o.input << ": " << stats.str() << '\n';
  }
  return h;
}

const char* task_class_for(const std::string& workload) {
  if (workload == "pagerank" || workload == "cc" || workload == "lp")
    return "full-scan";
  if (workload == "bfs" || workload == "sssp") return "frontier";
  if (workload == "queries") return "point-query";
  return "batch-update";
}

// Engine configuration: probe-file tuning first, explicit flags on top.
json engine_config(const CommonOpts& o, const std::string& workload) {
  json cfg = json::object();
  if (!o.config.empty()) {
    OwnedString tuned;
    check(weft_tune(read_file(o.config).c_str(), task_class_for(workload),
                    &tuned.p),
          "tune from " + o.config);
    cfg = json::parse(tuned.str());
  }
  if (o.strategy_opt->count()) cfg["strategy"] = o.strategy;
  if (o.partitioner_opt->count()) cfg["partitioner"] = o.partitioner;
  if (o.scheduler_opt->count()) cfg["scheduler"] = o.scheduler;
  if (o.coroutines_opt->count() || !cfg.contains("coroutines"))
    cfg["coroutines"] = o.coroutines;
  cfg["threads"] = o.threads;
  cfg["seed"] = o.seed;
  cfg["dataset"] = o.input;
  return cfg;
}

void emit_report(const CommonOpts& o, const std::string& report_json) {
  std::cout << report_json << '\n';
  if (!o.report.empty()) append_line(o.report, report_json);
  json r = json::parse(report_json);
  if (r.value("status", "") != "ok")
    fail("workload failed: " + r.value("error", std::string("unknown")));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weft: coroutine-interleaved dynamic graph engine"};
  app.require_subcommand(1);

  // load: parse a dataset, print load stats and the structure checksum.
  CommonOpts load_o;
  CLI::App* load = app.add_subcommand("load", "load an edge list and report");
  add_graph_flags(load, load_o, true);
  load->add_option("--report", load_o.report, "append the stats to this file");
  load->callback([&] {
    GraphHandle h = open_graph(load_o, false);
    json out{{"dataset", load_o.input},
             {"vertices", weft_live_vertices(h.g)},
             {"edges", weft_edge_count(h.g)},
             {"checksum", weft_graph_checksum(h.g)}};
    std::cout << out.dump() << '\n';
    if (!load_o.report.empty()) append_line(load_o.report, out.dump());
  });

  // run: one read-only workload over a loaded graph.
  CommonOpts run_o;
  std::string workload = "pagerank";
  std::uint32_t iters = 20;
  std::uint64_t source = 0;
  double damping = 0.85, fraction = 0.5;
  CLI::App* run = app.add_subcommand("run", "run a workload and report");
  add_graph_flags(run, run_o, true);
  add_engine_flags(run, run_o);
  run->add_option("--workload", workload,
                  "bfs | sssp | pagerank | cc | lp | queries")
      ->required();
  run->add_option("--source", source, "bfs/sssp start vertex (dense id)");
  run->add_option("--iters", iters, "pagerank/lp iterations");
  run->add_option("--damping", damping, "pagerank damping factor");
  run->add_option("--fraction", fraction, "queries: share of records probed");
  run->callback([&] {
    GraphHandle h = open_graph(run_o);
    json cfg = engine_config(run_o, workload);
    cfg["source"] = source;
    cfg["iters"] = iters;
    cfg["damping"] = damping;
    cfg["fraction"] = fraction;
    OwnedString report;
    check(weft_run_workload(h.g, workload.c_str(), cfg.dump().c_str(),
                            &report.p),
          "run " + workload);
    emit_report(run_o, report.str());
  });

  // update: replay a synthetic or file-based update stream in batches.
  CommonOpts upd_o;
  std::size_t ops = 10000, batch_size = 0;
  std::string stream_file;
  CLI::App* upd = app.add_subcommand("update", "apply an update stream");
  add_graph_flags(upd, upd_o, true);
  add_engine_flags(upd, upd_o);
  upd->add_option("--ops", ops, "synthetic stream length");
  upd->add_option("--update-stream", stream_file,
                  "text op stream (+/-/= lines); overrides --ops");
  upd->add_option("--batch-size", batch_size,
                  "ops per batch (default: whole stream)");
  upd->callback([&] {
    GraphHandle h = open_graph(upd_o);
    json cfg = engine_config(upd_o, "update");
    if (batch_size) cfg["batch_size"] = batch_size;
    json stream = stream_file.empty()
                      ? json{{"ops", ops}, {"seed", upd_o.seed}}
                      : json{{"path", stream_file}};
    OwnedString report;
    check(weft_update_stream(h.g, stream.dump().c_str(), cfg.dump().c_str(),
                             &report.p),
          "apply updates");
    emit_report(upd_o, report.str());
  });

  // sweep: cross-product of configurations over one workload.
  CommonOpts sw_o;
  std::string sw_workload = "queries", csv_path;
  std::vector<std::string> sw_strategies;
  std::vector<std::uint32_t> sw_coroutines, sw_threads;
  std::vector<std::size_t> sw_batches;
  std::size_t sw_ops = 10000;
  double sw_fraction = 0.5;
  std::uint32_t sw_iters = 20;
  CLI::App* sw = app.add_subcommand("sweep", "run a configuration matrix");
  add_graph_flags(sw, sw_o, true);
  sw->add_option("--workload", sw_workload,
                 "bfs | sssp | pagerank | cc | lp | queries | update");
  sw->add_option("--strategy", sw_strategies, "strategies to sweep")
      ->delimiter(',');
  sw->add_option("--coroutines", sw_coroutines, "task counts to sweep")
      ->delimiter(',');
  sw->add_option("--threads", sw_threads, "thread counts to sweep")
      ->delimiter(',');
  sw->add_option("--batch-size", sw_batches, "batch sizes to sweep (update)")
      ->delimiter(',');
  sw->add_option("--ops", sw_ops, "synthetic update stream length");
  sw->add_option("--fraction", sw_fraction, "queries: share of records probed");
  sw->add_option("--iters", sw_iters, "pagerank/lp iterations");
  sw->add_option("--seed", sw_o.seed, "stream/workload seed");
  sw->add_option("--csv", csv_path, "write the summary table to this file");
  sw->add_option("--report", sw_o.report, "append every run report here");
  sw->callback([&] {
    json spec{{"workload", sw_workload},
              {"dataset", sw_o.input},
              {"load",
               {{"shuffle", sw_o.shuffle},
                {"shuffle_seed", sw_o.shuffle_seed},
                {"weight_seed", sw_o.weight_seed}}},
              {"params",
               {{"fraction", sw_fraction},
                {"iters", sw_iters},
                {"seed", sw_o.seed}}}};
    json axes = json::object();
    if (!sw_strategies.empty()) axes["strategies"] = sw_strategies;
    if (!sw_coroutines.empty()) axes["coroutines"] = sw_coroutines;
    if (!sw_threads.empty()) axes["threads"] = sw_threads;
    if (!sw_batches.empty()) axes["batch_sizes"] = sw_batches;
    spec["axes"] = axes;
    if (sw_workload == "update")
      spec["stream"] = {{"ops", sw_ops}, {"seed", sw_o.seed}};
    OwnedString csv, reports;
    check(weft_sweep(spec.dump().c_str(), &csv.p, &reports.p), "sweep");
    std::cout << csv.str();
    if (!csv_path.empty()) write_file(csv_path, csv.str());
    if (!sw_o.report.empty())
      for (const json& r : json::parse(reports.str()))
        append_line(sw_o.report, r.dump());
  });

  // probe: measure the machine and emit a tuning config.
  std::string probe_report;
  std::uint32_t trials = 3;
  std::size_t working_set = 0;
  std::uint64_t probe_seed = 1;
  std::vector<std::uint32_t> m_grid;
  CLI::App* probe = app.add_subcommand("probe", "measure machine constants");
  probe->add_option("--trials", trials, "timing repetitions per grid point");
  probe->add_option("--working-set", working_set,
                    "probe working set bytes (0: sized from the cache)");
  probe->add_option("--seed", probe_seed, "layout seed");
  probe->add_option("--m-grid", m_grid, "task counts to try")->delimiter(',');
  probe->add_option("--report", probe_report, "write the result to this file");
  probe->callback([&] {
    json opts{{"trials", trials},
              {"working_set_bytes", working_set},
              {"seed", probe_seed}};
    if (!m_grid.empty()) opts["m_grid"] = m_grid;
    OwnedString result;
    check(weft_probe(opts.dump().c_str(), &result.p), "probe");
    std::cout << result.str() << '\n';
    if (!probe_report.empty()) write_file(probe_report, result.str());
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}
