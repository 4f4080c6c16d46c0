// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <vector>

#include "weft/task.hpp"

namespace weft {

// A batch of suspended tasks driven round-robin on one thread. The shared
// State lives on the heap so ExecContexts handed to the tasks keep pointing
// at live storage when the pool object itself moves.
class TaskPool {
 public:
  explicit TaskPool(SchedulerKind kind)
      : state_(std::make_unique<State>(kind == SchedulerKind::kTrimmedPolling)),
        kind_(kind) {}

  SchedulerKind kind() const { return kind_; }
  std::vector<CoroTask>& tasks() { return tasks_; }
  std::atomic<std::int64_t>& remain() { return state_->remain; }
  const bool& trim_flag() const { return state_->trim; }

  void add(CoroTask t) {
    tasks_.push_back(std::move(t));
    state_->remain.fetch_add(1, std::memory_order_relaxed);
  }

 private:
  struct State {
    explicit State(bool t) : trim(t) {}
    std::atomic<std::int64_t> remain{0};
    const bool trim;
  };
  std::unique_ptr<State> state_;
  std::vector<CoroTask> tasks_;
  SchedulerKind kind_;
};

// Build a pool of m tasks. factory(i, ctx) must return a fresh CoroTask
// whose block steps consult ctx, so trimming can reach into the gate.
template <class Factory>
TaskPool build_pool(const StrategyConfig& cfg, Counters& counters,
                    SchedulerKind kind, std::size_t m, Factory&& factory) {
  if (m == 0) throw InvalidTaskCount("task pool needs at least one task");
  TaskPool pool(kind);
  for (std::size_t i = 0; i < m; ++i) {
    ExecContext ctx{&cfg, &counters, &pool.remain(), &pool.trim_flag()};
    pool.add(factory(i, ctx));
  }
  return pool;
}

struct SchedulerStats {
  std::uint64_t resumes = 0;
  std::uint64_t rounds = 0;
};

// Trimmed polling over an ordered job list with slot reuse: up to m tasks
// live at once and a finished slot immediately takes the next job, so short
// jobs cannot idle a slot. remain counts live slots; the trim gate therefore
// stops yields whenever only one slot still holds work (including the m == 1
// case, where suspending could never overlap anything).
template <class MakeTask>
SchedulerStats trimmed_refill_run(const StrategyConfig& cfg, Counters& counters,
                                  std::size_t m, std::size_t njobs,
                                  MakeTask&& make) {
  if (m == 0) throw InvalidTaskCount("refill runner needs at least one slot");
  SchedulerStats st;
  if (njobs == 0) return st;

  struct State {
    std::atomic<std::int64_t> remain{0};
    const bool trim = true;
  };
  auto state = std::make_unique<State>();
  ExecContext ctx{&cfg, &counters, &state->remain, &state->trim};

  std::size_t fill = std::min(m, njobs);
  state->remain.store(std::int64_t(fill), std::memory_order_relaxed);
  std::vector<CoroTask> slots;
  slots.reserve(fill);
  std::size_t next = 0;
  for (; next < fill; ++next) slots.push_back(make(next, ctx));

  std::size_t live = fill;
  while (live > 0) {
    ++st.rounds;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (!slots[i].valid()) continue;
      bool done;
      try {
        done = slots[i].resume();
      } catch (const std::exception& e) {
        slots[i].destroy();
        --live;
        state->remain.fetch_sub(1, std::memory_order_relaxed);
        throw TaskPanicked(i, e.what());
      }
      ++st.resumes;
      counters.resumes.fetch_add(1, std::memory_order_relaxed);
      if (done) {
        slots[i].destroy();
        if (next < njobs) {
          slots[i] = make(next++, ctx);
        } else {
          --live;
          state->remain.fetch_sub(1, std::memory_order_relaxed);
        }
      }
    }
  }
  return st;
}

// Drive the pool to completion with its own discipline:
//  - polling: check-done-then-resume; finished tasks are destroyed when the
//    next pass discovers them, so every task costs exactly suspensions + 1
//    resumes and the pool never skips a turn.
//  - trimmed polling: resume-then-check with immediate destruction, plus the
//    trim flag that stops the last surviving task from yielding at all.
// A task exception is rethrown as TaskPanicked carrying the slot index.
SchedulerStats run_pool(TaskPool& pool, Counters& counters);

}  // namespace weft
