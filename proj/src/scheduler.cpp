// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#include "weft/scheduler.hpp"

namespace weft {

namespace {

SchedulerStats polling_run(TaskPool& pool, Counters& counters) {
  auto& tasks = pool.tasks();
  std::size_t alive = tasks.size();
  SchedulerStats st;
  while (alive > 0) {
    ++st.rounds;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      CoroTask& t = tasks[i];
      if (!t.valid()) continue;
      if (t.done()) {  // finished last pass; reclaim on discovery
        t.destroy();
        --alive;
        continue;
      }
      bool done;
      try {
        done = t.resume();
      } catch (const std::exception& e) {
        t.destroy();
        --alive;
        pool.remain().fetch_sub(1, std::memory_order_relaxed);
        throw TaskPanicked(i, e.what());
      }
      ++st.resumes;
      counters.resumes.fetch_add(1, std::memory_order_relaxed);
      if (done) pool.remain().fetch_sub(1, std::memory_order_relaxed);
    }
  }
  return st;
}

SchedulerStats trimmed_run(TaskPool& pool, Counters& counters) {
  auto& tasks = pool.tasks();
  std::size_t alive = tasks.size();
  SchedulerStats st;
  while (alive > 0) {
    ++st.rounds;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      CoroTask& t = tasks[i];
      if (!t.valid()) continue;
      bool done;
      try {
        done = t.resume();
      } catch (const std::exception& e) {
        t.destroy();
        --alive;
        pool.remain().fetch_sub(1, std::memory_order_relaxed);
        throw TaskPanicked(i, e.what());
      }
      ++st.resumes;
      counters.resumes.fetch_add(1, std::memory_order_relaxed);
      if (done) {
        t.destroy();
        --alive;
        pool.remain().fetch_sub(1, std::memory_order_relaxed);
      }
    }
  }
  return st;
}

}  // namespace

SchedulerStats run_pool(TaskPool& pool, Counters& counters) {
  return pool.kind() == SchedulerKind::kTrimmedPolling
             ? trimmed_run(pool, counters)
             : polling_run(pool, counters);
}

}  // namespace weft
