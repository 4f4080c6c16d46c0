// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <bit>
#include <shared_mutex>
#include <vector>

#include "weft/access.hpp"
#include "weft/parallel.hpp"
#include "weft/partition.hpp"
#include "weft/scheduler.hpp"

namespace weft {

// Claim-once vertex set for frontier rounds. claim() is an atomic test-and-
// set so racing workers agree on exactly one winner; snapshot() reads it out
// in ascending id order, which is what makes frontier contents independent
// of thread interleaving.
class Frontier {
 public:
  explicit Frontier(std::size_t n) : words_((n + 63) / 64), n_(n) {}

  std::size_t size() const { return n_; }

  bool claim(VertexId v) {
    std::uint64_t bit = 1ull << (v & 63);
    std::uint64_t old =
        words_[v >> 6].fetch_or(bit, std::memory_order_relaxed);
    return (old & bit) == 0;
  }

  bool test(VertexId v) const {
    return (words_[v >> 6].load(std::memory_order_relaxed) >>
            (v & 63)) & 1;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto& w : words_) c += std::popcount(w.load(std::memory_order_relaxed));
    return c;
  }

  std::vector<VertexId> snapshot() const {
    std::vector<VertexId> out;
    out.reserve(count());
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi].load(std::memory_order_relaxed);
      while (w) {
        unsigned b = unsigned(std::countr_zero(w));
        out.push_back(VertexId(wi * 64 + b));
        w &= w - 1;
      }
    }
    return out;
  }

  void clear() {
    for (auto& w : words_) w.store(0, std::memory_order_relaxed);
  }

 private:
  std::vector<std::atomic<std::uint64_t>> words_;
  std::size_t n_;
};

// Live vertices in ascending id order.
inline std::vector<VertexId> live_vertex_list(const Graph& g) {
  std::vector<VertexId> out;
  out.reserve(g.live_vertices());
  for (VertexId v = 0; v < g.vertex_slots(); ++v)
    if (g.is_live(v)) out.push_back(v);
  return out;
}

// Parallel sweep over live vertices: f(v) from whichever thread owns the
// range. Plain loops; the vertex table walks sequentially anyway.
template <class F>
void process_vertices(const Graph& g, std::uint32_t threads, F&& f) {
  std::shared_lock lock(g.structure_mutex());
  auto live = live_vertex_list(g);
  auto ranges = partition_range(live.size(), threads);
  run_threads(std::uint32_t(std::max<std::size_t>(ranges.size(), 1)),
              [&](std::uint32_t t) {
                if (t >= ranges.size()) return;
                for (std::size_t i = ranges[t].begin; i < ranges[t].end; ++i)
                  f(live[i]);
              });
}

// Full edge scan: f(src, dst, weight) for every record whose destination is
// live (records toward deleted vertices are filtered here, not in storage).
// cfg picks the partition axis and scheduler; results must not depend on
// either, since f only ever sees the same record multiset.
template <class EdgeFn>
void process_all_edges(const Graph& g, const StrategyConfig& cfg,
                       Counters& counters, std::uint32_t threads, EdgeFn&& f) {
  std::shared_lock lock(g.structure_mutex());
  const std::size_t m = std::max<std::uint32_t>(cfg.coroutines, 1);

  if (cfg.partitioner == Partitioner::kChain) {
    auto parts = partition_chain(g, threads * std::uint32_t(m));
    if (parts.empty()) return;
    auto groups = partition_range(parts.size(), threads);
    run_threads(std::uint32_t(groups.size()), [&](std::uint32_t t) {
      auto pool = build_pool(
          cfg, counters, cfg.scheduler, groups[t].end - groups[t].begin,
          [&](std::size_t i, ExecContext ctx) {
            return get_neighbors_chain(
                ctx, g, parts[groups[t].begin + i],
                [&g, &f](VertexId o, VertexId d, Weight w) {
                  if (g.is_live(d)) f(o, d, w);
                });
          });
      run_pool(pool, counters);
    });
    return;
  }

  auto live = live_vertex_list(g);
  auto parts = partition_range(live.size(), threads * std::uint32_t(m));
  if (parts.empty()) return;
  auto groups = partition_range(parts.size(), threads);
  run_threads(std::uint32_t(groups.size()), [&](std::uint32_t t) {
    auto pool = build_pool(
        cfg, counters, cfg.scheduler, groups[t].end - groups[t].begin,
        [&](std::size_t i, ExecContext ctx) {
          const IndexRange& r = parts[groups[t].begin + i];
          return get_neighbors_range(
              ctx, g, live.data() + r.begin, r.end - r.begin,
              [&g, &f](VertexId o, VertexId d, Weight w) {
                if (g.is_live(d)) f(o, d, w);
              });
        });
    run_pool(pool, counters);
  });
}

// One frontier round: f(src, dst, weight) for every record of every active
// vertex (live destinations only). Dense frontiers (fraction of live
// vertices >= cfg.dense_threshold) run as a filtered full chain scan under
// plain polling; sparse ones run per-vertex walks refilled under trimmed
// polling. Both paths hand f the identical record multiset.
template <class EdgeFn>
void process_edge(const Graph& g, const StrategyConfig& cfg, Counters& counters,
                  std::uint32_t threads, const std::vector<VertexId>& active,
                  EdgeFn&& f) {
  if (active.empty()) return;
  std::shared_lock lock(g.structure_mutex());
  const std::size_t m = std::max<std::uint32_t>(cfg.coroutines, 1);
  const std::size_t live = g.live_vertices();
  const bool dense =
      live > 0 && double(active.size()) >= cfg.dense_threshold * double(live);

  if (dense) {
    std::vector<std::uint8_t> is_active(g.vertex_slots(), 0);
    for (VertexId v : active) is_active[v] = 1;
    auto parts = partition_chain(g, threads * std::uint32_t(m));
    if (parts.empty()) return;
    auto groups = partition_range(parts.size(), threads);
    run_threads(std::uint32_t(groups.size()), [&](std::uint32_t t) {
      auto pool = build_pool(
          cfg, counters, SchedulerKind::kPolling,
          groups[t].end - groups[t].begin, [&](std::size_t i, ExecContext ctx) {
            return get_neighbors_chain(
                ctx, g, parts[groups[t].begin + i],
                [&](VertexId o, VertexId d, Weight w) {
                  if (is_active[o] && g.is_live(d)) f(o, d, w);
                });
          });
      run_pool(pool, counters);
    });
    return;
  }

  auto ranges = partition_range(active.size(), threads);
  run_threads(std::uint32_t(std::max<std::size_t>(ranges.size(), 1)),
              [&](std::uint32_t t) {
                if (t >= ranges.size()) return;
                const IndexRange& r = ranges[t];
                trimmed_refill_run(
                    cfg, counters, m, r.end - r.begin,
                    [&](std::size_t j, ExecContext ctx) {
                      VertexId v = active[r.begin + j];
                      return get_neighbors_vertex(
                          ctx, g, v, [&, v](VertexId d, Weight w) {
                            if (g.is_live(d)) f(v, d, w);
                          });
                    });
              });
}

}  // namespace weft
