// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <coroutine>
#include <cstdint>
#include <exception>
#include <utility>

#include "weft/counters.hpp"
#include "weft/strategy.hpp"

namespace weft {

// A suspendable unit of graph work. Created suspended; the scheduler drives
// it with resume() until done. Exceptions thrown inside the coroutine are
// captured and rethrown from the resume() that hit them.
class CoroTask {
 public:
  struct promise_type {
    std::uint64_t suspensions = 0;
    std::exception_ptr error;

    CoroTask get_return_object() {
      return CoroTask(Handle::from_promise(*this));
    }
    std::suspend_always initial_suspend() noexcept { return {}; }
    std::suspend_always final_suspend() noexcept { return {}; }
    void return_void() {}
    void unhandled_exception() { error = std::current_exception(); }
  };
  using Handle = std::coroutine_handle<promise_type>;

  CoroTask() = default;
  explicit CoroTask(Handle h) : h_(h) {}
  CoroTask(CoroTask&& o) noexcept : h_(std::exchange(o.h_, {})) {}
  CoroTask& operator=(CoroTask&& o) noexcept {
    if (this != &o) {
      destroy();
      h_ = std::exchange(o.h_, {});
    }
    return *this;
  }
  CoroTask(const CoroTask&) = delete;
  CoroTask& operator=(const CoroTask&) = delete;
  ~CoroTask() { destroy(); }

  bool valid() const { return bool(h_); }
  bool done() const { return !h_ || h_.done(); }
  std::uint64_t suspensions() const { return h_ ? h_.promise().suspensions : 0; }

  // Advance to the next suspension point (or completion). Returns done().
  // Resuming a finished task is a harmless no-op.
  bool resume() {
    if (done()) return true;
    h_.resume();
    if (h_.done() && h_.promise().error)
      std::rethrow_exception(h_.promise().error);
    return done();
  }

  void destroy() {
    if (h_) {
      h_.destroy();
      h_ = {};
    }
  }

 private:
  Handle h_;
};

// Everything a running task needs to decide a block step: the strategy, the
// counter sink, and (when a scheduler drives it) the pool's live-task count
// plus whether that scheduler trims. remain/trim stay null for manual runs.
struct ExecContext {
  const StrategyConfig* cfg = nullptr;
  Counters* counters = nullptr;
  const std::atomic<std::int64_t>* remain = nullptr;
  const bool* trim = nullptr;
};

// A suspended task only pays off while siblings exist to hide latency
// behind. Under a trimming scheduler the last survivor stops yielding.
inline bool scheduler_allows_yield(const ExecContext& ctx) {
  return !ctx.trim || !*ctx.trim || !ctx.remain ||
         ctx.remain->load(std::memory_order_relaxed) != 1;
}

// Awaiter for one block step. No-ops (stays ready) when the step resolved to
// a hard access; otherwise suspends, counting the yield on both the promise
// and the shared counters.
struct YieldPoint {
  bool do_suspend = false;
  Counters* counters = nullptr;

  bool await_ready() const noexcept { return !do_suspend; }
  void await_suspend(CoroTask::Handle h) const noexcept {
    ++h.promise().suspensions;
    if (counters) counters->yields.fetch_add(1, std::memory_order_relaxed);
  }
  void await_resume() const noexcept {}
};

// Gate one block access: maybe issue a software prefetch over the block's
// cache lines, then hand back an awaiter that suspends iff the gate said
// yield and the scheduler agrees. chain_index is the block's position within
// the current traversal run (kHybridHotness keys off it).
inline YieldPoint block_step(const ExecContext& ctx, const void* addr,
                             std::size_t bytes, BlockKind kind,
                             std::uint32_t chain_index) {
  GateDecision gate = prefetch_gate(ctx.cfg->strategy, kind, chain_index,
                                    ctx.cfg->hot_prefix);
  if (gate.hint && addr) {
    for (std::size_t off = 0; off < bytes; off += 64)
      __builtin_prefetch(static_cast<const char*>(addr) + off, 0, 3);
    ctx.counters->hints.fetch_add(1, std::memory_order_relaxed);
  }
  return YieldPoint{gate.yield && scheduler_allows_yield(ctx), ctx.counters};
}

}  // namespace weft
