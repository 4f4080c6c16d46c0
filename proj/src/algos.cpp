// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#include "weft/algos.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <limits>
#include <shared_mutex>
#include <unordered_set>

#include "weft/access.hpp"
#include "weft/process.hpp"
#include "weft/rng.hpp"

namespace weft {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Fixed-point scale for rank contributions: integer adds commute, so the
// scatter is schedule-free; 2^48 keeps sub-1 shares at ~1e-15 resolution.
constexpr double kRankScale = 281474976710656.0;

void check_source(const Graph& g, VertexId source) {
  if (!g.is_live(source)) throw UnknownVertex(source);
}

template <class T>
void cas_min(std::atomic<T>& a, T v, std::atomic<bool>& changed) {
  T cur = a.load(std::memory_order_relaxed);
  while (v < cur) {
    if (a.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
      changed.store(true, std::memory_order_relaxed);
      return;
    }
  }
}

}  // namespace

std::vector<std::uint32_t> bfs(const Graph& g, const StrategyConfig& cfg,
                               Counters& counters, std::uint32_t threads,
                               VertexId source) {
  check_source(g, source);
  const std::size_t n = g.vertex_slots();
  std::vector<std::atomic<std::uint32_t>> dist(n);
  for (auto& d : dist) d.store(kUnreachedHops, std::memory_order_relaxed);
  dist[source].store(0, std::memory_order_relaxed);

  std::vector<VertexId> active{source};
  std::uint32_t depth = 0;
  while (!active.empty()) {
    Frontier next(n);
    process_edge(g, cfg, counters, threads, active,
                 [&](VertexId, VertexId d, Weight) {
                   if (dist[d].load(std::memory_order_relaxed) !=
                       kUnreachedHops)
                     return;
                   // claim() picks one winner; the value every candidate
                   // would store is the same, so who wins cannot matter.
                   if (next.claim(d))
                     dist[d].store(depth + 1, std::memory_order_relaxed);
                 });
    active = next.snapshot();
    ++depth;
  }

  std::vector<std::uint32_t> out(n);
  for (std::size_t v = 0; v < n; ++v)
    out[v] = dist[v].load(std::memory_order_relaxed);
  return out;
}

std::vector<double> sssp(const Graph& g, const StrategyConfig& cfg,
                         Counters& counters, std::uint32_t threads,
                         VertexId source) {
  check_source(g, source);
  const std::size_t n = g.vertex_slots();
  std::vector<std::atomic<double>> dist(n);
  for (auto& d : dist) d.store(kInf, std::memory_order_relaxed);
  dist[source].store(0.0, std::memory_order_relaxed);

  std::vector<VertexId> active{source};
  while (!active.empty()) {
    Frontier next(n);
    process_edge(g, cfg, counters, threads, active,
                 [&](VertexId s, VertexId d, Weight w) {
                   double nd =
                       dist[s].load(std::memory_order_relaxed) + double(w);
                   double cur = dist[d].load(std::memory_order_relaxed);
                   while (nd < cur) {
                     if (dist[d].compare_exchange_weak(
                             cur, nd, std::memory_order_relaxed)) {
                       next.claim(d);
                       break;
                     }
                   }
                 });
    active = next.snapshot();
  }

  std::vector<double> out(n);
  for (std::size_t v = 0; v < n; ++v)
    out[v] = dist[v].load(std::memory_order_relaxed);
  return out;
}

std::vector<double> pagerank(const Graph& g, const StrategyConfig& cfg,
                             Counters& counters, std::uint32_t threads,
                             std::uint32_t iters, double damping) {
  if (iters == 0) throw InvalidArgument("pagerank needs at least one round");
  const std::size_t n = g.vertex_slots();
  const std::size_t live = g.live_vertices();
  std::vector<double> rank(n, 0.0);
  if (live == 0) return rank;

  // Effective out-degree: records whose destination is live.
  std::vector<std::atomic<std::uint32_t>> outdeg(n);
  process_all_edges(g, cfg, counters, threads,
                    [&](VertexId s, VertexId, Weight) {
                      outdeg[s].fetch_add(1, std::memory_order_relaxed);
                    });

  for (VertexId v = 0; v < n; ++v)
    if (g.is_live(v)) rank[v] = 1.0 / double(live);

  std::vector<std::int64_t> share(n, 0);
  std::vector<std::atomic<std::int64_t>> acc(n);
  for (std::uint32_t it = 0; it < iters; ++it) {
    process_vertices(g, threads, [&](VertexId v) {
      std::uint32_t od = outdeg[v].load(std::memory_order_relaxed);
      share[v] = od ? std::llround(rank[v] * damping / double(od) * kRankScale)
                    : 0;
      acc[v].store(0, std::memory_order_relaxed);
    });
    // Dangling mass folded in one fixed order; doubles don't commute.
    double dangling = 0.0;
    for (VertexId v = 0; v < n; ++v)
      if (g.is_live(v) && outdeg[v].load(std::memory_order_relaxed) == 0)
        dangling += rank[v];

    process_all_edges(g, cfg, counters, threads,
                      [&](VertexId s, VertexId d, Weight) {
                        acc[d].fetch_add(share[s], std::memory_order_relaxed);
                      });

    const double base =
        (1.0 - damping) / double(live) + damping * dangling / double(live);
    process_vertices(g, threads, [&](VertexId v) {
      rank[v] =
          base + double(acc[v].load(std::memory_order_relaxed)) / kRankScale;
    });
  }
  return rank;
}

std::vector<VertexId> connected_components(const Graph& g,
                                           const StrategyConfig& cfg,
                                           Counters& counters,
                                           std::uint32_t threads) {
  const std::size_t n = g.vertex_slots();
  std::vector<std::atomic<VertexId>> label(n);
  for (VertexId v = 0; v < n; ++v)
    label[v].store(g.is_live(v) ? v : kNoVertex, std::memory_order_relaxed);

  std::atomic<bool> changed{true};
  while (changed.load(std::memory_order_relaxed)) {
    changed.store(false, std::memory_order_relaxed);
    process_all_edges(g, cfg, counters, threads,
                      [&](VertexId s, VertexId d, Weight) {
                        VertexId a = label[s].load(std::memory_order_relaxed);
                        VertexId b = label[d].load(std::memory_order_relaxed);
                        if (a < b)
                          cas_min(label[d], a, changed);
                        else if (b < a)
                          cas_min(label[s], b, changed);
                      });
  }

  std::vector<VertexId> out(n);
  for (std::size_t v = 0; v < n; ++v)
    out[v] = label[v].load(std::memory_order_relaxed);
  return out;
}

std::vector<VertexId> label_propagation(const Graph& g,
                                        const StrategyConfig& cfg,
                                        Counters& counters,
                                        std::uint32_t threads,
                                        std::uint32_t iters) {
  if (iters == 0) throw InvalidArgument("label propagation needs >= 1 round");
  const std::size_t n = g.vertex_slots();
  std::vector<VertexId> prev(n, kNoVertex);
  for (VertexId v = 0; v < n; ++v)
    if (g.is_live(v)) prev[v] = v;

  // In-adjacency scratch, built once: counts, then prefix offsets, then a
  // racing scatter. Row contents are a set regardless of scatter order, and
  // the vote below only reads rows as multisets.
  std::vector<std::atomic<std::uint32_t>> indeg(n);
  process_all_edges(g, cfg, counters, threads,
                    [&](VertexId, VertexId d, Weight) {
                      indeg[d].fetch_add(1, std::memory_order_relaxed);
                    });
  std::vector<std::size_t> off(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v)
    off[v + 1] = off[v] + indeg[v].load(std::memory_order_relaxed);
  std::vector<std::atomic<std::uint32_t>> cursor(n);
  std::vector<VertexId> in_src(off[n]);
  process_all_edges(g, cfg, counters, threads,
                    [&](VertexId s, VertexId d, Weight) {
                      std::uint32_t at =
                          cursor[d].fetch_add(1, std::memory_order_relaxed);
                      in_src[off[d] + at] = s;
                    });

  std::vector<VertexId> next(prev);
  for (std::uint32_t it = 0; it < iters; ++it) {
    process_vertices(g, threads, [&](VertexId v) {
      thread_local std::vector<VertexId> votes;
      votes.clear();
      votes.push_back(prev[v]);  // own label is one vote
      for (std::size_t i = off[v]; i < off[v + 1]; ++i)
        votes.push_back(prev[in_src[i]]);
      std::sort(votes.begin(), votes.end());
      VertexId best = votes[0];
      std::size_t best_n = 0, run = 0;
      for (std::size_t i = 0; i < votes.size(); ++i) {
        run = (i && votes[i] == votes[i - 1]) ? run + 1 : 1;
        if (run > best_n) {  // strict: first max wins = smallest label
          best_n = run;
          best = votes[i];
        }
      }
      next[v] = best;
    });
    std::swap(prev, next);
  }
  return prev;
}

QueryStats edge_query_workload(const Graph& g, const StrategyConfig& cfg,
                               Counters& counters, std::uint32_t threads,
                               double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0) || fraction > 1.0)
    throw InvalidArgument("query fraction must be in (0, 1]");

  struct Q {
    VertexId src, dst;
  };
  std::vector<Q> queries;
  std::size_t existing = 0;
  {
    std::shared_lock lock(g.structure_mutex());
    std::vector<Q> edges;
    edges.reserve(g.edge_count());
    std::unordered_set<std::uint64_t> present;
    present.reserve(g.edge_count() * 2);
    std::vector<VertexId> live;
    live.reserve(g.live_vertices());
    for (VertexId v = 0; v < g.vertex_slots(); ++v) {
      if (!g.is_live(v)) continue;
      live.push_back(v);
      g.for_neighbors(v, [&](VertexId d, Weight) {
        edges.push_back({v, d});
        present.insert((std::uint64_t(v) << 32) | d);
      });
    }
    existing = std::size_t(std::ceil(fraction * double(edges.size())));
    seeded_shuffle(edges, mix64(seed ^ 0xE));
    queries.assign(edges.begin(), edges.begin() + existing);

    // Equal count of absent pairs over live endpoints; dedup'd, and capped
    // so a near-complete graph cannot spin forever.
    Rng rng(mix64(seed ^ 0x17));
    std::size_t want = existing, attempts = 0;
    const std::size_t cap = 64 * want + 1024;
    while (want > 0 && !live.empty() && attempts < cap) {
      ++attempts;
      VertexId s = live[rng.below(live.size())];
      VertexId d = live[rng.below(live.size())];
      std::uint64_t key = (std::uint64_t(s) << 32) | d;
      if (present.insert(key).second) {
        queries.push_back({s, d});
        --want;
      }
    }
    seeded_shuffle(queries, mix64(seed ^ 0x51));
  }

  std::vector<std::optional<EdgeRecord>> found(queries.size());
  {
    std::shared_lock lock(g.structure_mutex());
    const std::size_t m = std::max<std::uint32_t>(cfg.coroutines, 1);
    auto ranges = partition_range(queries.size(), threads);
    run_threads(std::uint32_t(std::max<std::size_t>(ranges.size(), 1)),
                [&](std::uint32_t t) {
                  if (t >= ranges.size()) return;
                  const IndexRange& r = ranges[t];
                  trimmed_refill_run(
                      cfg, counters, m, r.end - r.begin,
                      [&](std::size_t j, ExecContext ctx) {
                        const Q& q = queries[r.begin + j];
                        return find_neighbor(ctx, g, q.src, q.dst,
                                             &found[r.begin + j]);
                      });
                });
  }

  QueryStats stats;
  stats.queries = queries.size();
  for (const auto& f : found) {
    if (!f) {
      ++stats.misses;
      continue;
    }
    ++stats.hits;
    std::uint32_t wb;
    std::memcpy(&wb, &f->weight, sizeof wb);
    stats.weight_checksum += mix64((std::uint64_t(f->dst) << 32) ^ wb);
  }
  return stats;
}

}  // namespace weft
