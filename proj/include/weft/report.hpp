// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "weft/counters.hpp"
#include "weft/hwcounters.hpp"
#include "weft/strategy.hpp"

namespace weft {

// One measured run. Serialized as a single JSON line (append-safe logs) and
// summarized across runs as CSV.
struct RunReport {
  std::string workload;   // bfs | sssp | pagerank | cc | lp | queries | update
  std::string dataset;    // file path or synthetic tag
  StrategyConfig config;
  std::uint32_t threads = 1;
  std::size_t batch_size = 0;  // update runs only, 0 elsewhere
  std::uint64_t wall_ns = 0;
  double throughput = 0.0;     // ops per second where the workload has ops
  CounterSnapshot counters;
  HwCounters hw;
  std::string timestamp;       // ISO-8601 UTC, set at emission
  std::string status = "ok";   // ok | error
  std::string error;           // message when status == error
  std::uint64_t result_digest = 0;  // order-free fold of the outputs
  std::uint64_t checksum = 0;       // graph checksum (update runs)
  std::size_t batches = 0;          // batch count (update runs)
  std::size_t failed_ops = 0;       // per-op update errors
  bool best = false;                // marked by sweep summaries
};

std::string iso8601_utc_now();

// Single-line JSON. report_from_json round-trips every field.
std::string report_to_json(const RunReport& r);
RunReport report_from_json(const std::string& line);

// Appends one JSON line; creates the file if needed. Throws IoError.
void append_report(const std::string& path, const RunReport& r);

// CSV summary, one row per report, header first. Among ok rows the smallest
// wall time gets best=1 (already-set best flags are respected when present).
std::string sweep_csv(const std::vector<RunReport>& reports);

}  // namespace weft
