// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <cstdint>

namespace weft {

struct CounterSnapshot {
  std::uint64_t hints = 0;
  std::uint64_t yields = 0;
  std::uint64_t resumes = 0;
  std::uint64_t blocks_visited = 0;
  std::uint64_t records_visited = 0;
  std::uint64_t node_visits = 0;
  std::uint64_t tasks_run = 0;
};

// Shared op statistics. Workers bump these with relaxed ordering; they are
// read for reports only after the run joins, so no stronger order is needed.
struct Counters {
  std::atomic<std::uint64_t> hints{0};
  std::atomic<std::uint64_t> yields{0};
  std::atomic<std::uint64_t> resumes{0};
  std::atomic<std::uint64_t> blocks_visited{0};
  std::atomic<std::uint64_t> records_visited{0};
  std::atomic<std::uint64_t> node_visits{0};
  std::atomic<std::uint64_t> tasks_run{0};

  void reset() {
    hints = yields = resumes = 0;
    blocks_visited = records_visited = node_visits = tasks_run = 0;
  }

  CounterSnapshot snapshot() const {
    CounterSnapshot s;
    s.hints = hints.load(std::memory_order_relaxed);
    s.yields = yields.load(std::memory_order_relaxed);
    s.resumes = resumes.load(std::memory_order_relaxed);
    s.blocks_visited = blocks_visited.load(std::memory_order_relaxed);
    s.records_visited = records_visited.load(std::memory_order_relaxed);
    s.node_visits = node_visits.load(std::memory_order_relaxed);
    s.tasks_run = tasks_run.load(std::memory_order_relaxed);
    return s;
  }
};

}  // namespace weft
