// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "weft/strategy.hpp"

namespace weft {

// Measured machine constants the tuner feeds on. All attributes in
// nanoseconds except the hit probabilities.
struct CostModelParams {
  double miss_ns = 0.0;         // dependent-load miss served from memory
  double task_switch_ns = 0.0;  // one suspend + resume round trip
  // Chance the hardware prefetcher hides a miss, per memory layout.
  double hit_prob_sequential = 0.0;  // dense arrays, stride-1
  double hit_prob_chained = 0.0;     // fixed-size blocks in allocation order
  double hit_prob_tree = 0.0;        // pointer hops with no usable stride
};

// What kind of work a strategy is being picked for.
enum class TaskClass : std::uint8_t {
  kFullScan = 0,    // touch every edge once
  kFrontier = 1,    // touch edges of an active subset
  kPointQuery = 2,  // independent single-edge lookups
  kBatchUpdate = 3, // grouped mutations
};

struct ProbeOptions {
  std::vector<std::uint32_t> m_grid = {1, 2, 4, 8, 16, 32};
  std::uint32_t trials = 3;
  // 0 means 4x the detected last-level cache, clamped to [1 MiB, 128 MiB].
  std::size_t working_set_bytes = 0;
  std::uint64_t seed = 1;
};

struct ProbeResult {
  std::uint32_t recommended_m = 8;  // argmin of the sweep, ties to smaller m
  CostModelParams cost;
  std::size_t working_set_bytes = 0;
  // (m, median ns per step) for every grid point, grid order.
  std::vector<std::pair<std::uint32_t, double>> sweep;
};

std::size_t detect_llc_bytes();  // sysconf when available, else 32 MiB

// Software prefetch pays for a layout when the expected miss cost it saves
// beats the switch it spends: miss_ns * (1 - hit_prob) >= switch_ns.
// Raising hit_prob can therefore only move a decision toward hardware.
inline bool software_pays_off(double miss_ns, double hit_prob,
                              double switch_ns) {
  return miss_ns * (1.0 - hit_prob) >= switch_ns;
}

// Measure the machine: miss cost from a random-cycle pointer chase over a
// cold working set, switch cost from timed suspend/resume pairs, per-layout
// hit probabilities from chase latencies interpolated between the random
// and sequential extremes, and the task count from a sweep of the actual
// prefetch-and-yield walk. Throws InsufficientMemory when the working set
// cannot be allocated.
ProbeResult probe_config(const ProbeOptions& opts = {});

// Deterministic mapping from task class + measurements to a full config:
//  - full scans -> chain partition + polling; everything else runs
//    vertex-range partition + trimmed polling (short tasks, refilled).
//  - prefetch strategy from the cost rule on the class's dominant layout;
//    scan classes degrade soft -> hot-prefix -> hard, lookup classes degrade
//    soft -> skip-chunks -> hard.
StrategyConfig tune(TaskClass cls, const ProbeResult& probe);

std::string_view task_class_name(TaskClass cls);
TaskClass parse_task_class(std::string_view s);

std::string probe_to_json(const ProbeResult& r);
ProbeResult probe_from_json(const std::string& text);

}  // namespace weft
