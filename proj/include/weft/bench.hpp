// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "weft/batch.hpp"
#include "weft/graph.hpp"
#include "weft/report.hpp"
#include "weft/strategy.hpp"

namespace weft {

// Knobs consumed by the individual workloads; unused fields are ignored.
struct WorkloadParams {
  VertexId source = 0;        // bfs, sssp
  std::uint32_t iters = 20;   // pagerank, lp
  double damping = 0.85;      // pagerank
  double fraction = 0.5;      // queries: share of existing records probed
  std::uint64_t seed = 1;     // queries sampling
};

// Read-only workload ids: bfs | sssp | pagerank | cc | lp | queries.
// Unknown ids throw InvalidArgument; errors raised while running are folded
// into the report as status == "error" instead of escaping. result_digest is
// an order-free fold of the outputs, so equal outputs give equal digests
// regardless of configuration.
RunReport run_workload(const Graph& g, const std::string& workload,
                       const StrategyConfig& cfg, std::uint32_t threads,
                       const WorkloadParams& params,
                       const std::string& dataset = "");

// Replays the stream in batch_size slices through the batched writer and
// reports applied ops/s plus the final graph checksum. batch_size must be
// at least 1. Per-op failures land in failed_ops, not exceptions.
RunReport update_stream_driver(Graph& g, const std::vector<UpdateOp>& stream,
                               std::size_t batch_size,
                               const StrategyConfig& cfg, std::uint32_t threads,
                               const std::string& dataset = "");

// Cross-product axes; an empty axis falls back to the base config's value.
struct SweepAxes {
  std::vector<Strategy> strategies;
  std::vector<std::uint32_t> coroutines;
  std::vector<std::uint32_t> threads;
  std::vector<std::size_t> batch_sizes;  // update workload only
};

struct SweepOptions {
  std::string workload = "queries";
  SweepAxes axes;
  WorkloadParams params;
  StrategyConfig base;           // non-swept fields come from here
  std::vector<UpdateOp> stream;  // consumed when workload == "update"
  std::string dataset;
};

// Runs every cell of the cross product and marks the fastest ok row as best.
// A sequential baseline cell (all-hard, 1 coroutine, polling, 1 thread) is
// prepended when the matrix does not already contain it. Failed cells are
// recorded and do not abort the sweep. make_graph must produce an
// identically loaded graph each call; update cells consume a fresh one,
// read-only cells share the first.
std::vector<RunReport> sweep(
    const std::function<std::unique_ptr<Graph>()>& make_graph,
    const SweepOptions& opts);

}  // namespace weft
