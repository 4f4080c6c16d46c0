// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "weft/graph.hpp"
#include "weft/partition.hpp"
#include "weft/task.hpp"

namespace weft {

// Coroutine-shaped graph reads. Each one gates every block access through
// block_step (maybe prefetch, maybe suspend) so a scheduler can interleave
// many of them per thread. Callers keep the graph alive and hold whatever
// structure lock the run needs; visit callbacks must not mutate the graph
// (debug builds assert).

// Visit all records of one vertex: visit(dst, weight), sorted by dst.
template <class Visit>
CoroTask get_neighbors_vertex(ExecContext ctx, const Graph& g, VertexId v,
                              Visit visit) {
  ctx.counters->tasks_run.fetch_add(1, std::memory_order_relaxed);
  const VertexRecord& r = g.record(v);
  const BlockLayout& lay = g.layout();
  const Block* b = r.traversal;
  const std::uint32_t blocks = b ? (r.level == 0 ? 1u : r.level) : 0u;
  // One kind per run, known without touching any block.
  const BlockKind kind = r.level == 0 ? BlockKind::kChunk : BlockKind::kLeaf;
  const std::size_t bytes = block_bytes(lay, kind);
  for (std::uint32_t i = 0; i < blocks; ++i) {
    co_await block_step(ctx, b, bytes, kind, i);
    ctx.counters->blocks_visited.fetch_add(1, std::memory_order_relaxed);
    {
      detail::VisitScope scope;
      for (std::uint32_t j = 0; j < b->count; ++j)
        visit(rec_dst(lay, b, j), rec_weight(lay, b, j));
    }
    ctx.counters->records_visited.fetch_add(b->count, std::memory_order_relaxed);
    b = b->next;
  }
}

// Walk one scan-chain slice: visit(owner, dst, weight) for every record.
// The hotness index resets at each owner boundary so the gate sees the
// block's position within its own run, same as the per-vertex walk.
template <class Visit>
CoroTask get_neighbors_chain(ExecContext ctx, const Graph& g, SubChain part,
                             Visit visit) {
  ctx.counters->tasks_run.fetch_add(1, std::memory_order_relaxed);
  const BlockLayout& lay = g.layout();
  const Block* b = part.start;
  VertexId run_owner = kNoVertex;
  std::uint32_t run_index = 0;
  for (std::size_t i = 0; i < part.blocks; ++i) {
    if (!b)
      throw InvalidSubChain("chain ended after " + std::to_string(i) +
                            " of " + std::to_string(part.blocks) + " blocks");
    if (b->owner != run_owner) {
      run_owner = b->owner;
      run_index = 0;
    }
    co_await block_step(ctx, b, block_bytes(lay, b->kind), b->kind, run_index);
    ++run_index;
    ctx.counters->blocks_visited.fetch_add(1, std::memory_order_relaxed);
    {
      detail::VisitScope scope;
      for (std::uint32_t j = 0; j < b->count; ++j)
        visit(b->owner, rec_dst(lay, b, j), rec_weight(lay, b, j));
    }
    ctx.counters->records_visited.fetch_add(b->count, std::memory_order_relaxed);
    b = b->next;
  }
}

// Walk several vertices' records in one task: visit(owner, dst, weight).
// Step/counter behavior per vertex matches get_neighbors_vertex exactly.
template <class Visit>
CoroTask get_neighbors_range(ExecContext ctx, const Graph& g,
                             const VertexId* vs, std::size_t n, Visit visit) {
  ctx.counters->tasks_run.fetch_add(1, std::memory_order_relaxed);
  const BlockLayout& lay = g.layout();
  for (std::size_t k = 0; k < n; ++k) {
    const VertexId v = vs[k];
    const VertexRecord& r = g.record(v);
    const Block* b = r.traversal;
    const std::uint32_t blocks = b ? (r.level == 0 ? 1u : r.level) : 0u;
    const BlockKind kind = r.level == 0 ? BlockKind::kChunk : BlockKind::kLeaf;
    const std::size_t bytes = block_bytes(lay, kind);
    for (std::uint32_t i = 0; i < blocks; ++i) {
      co_await block_step(ctx, b, bytes, kind, i);
      ctx.counters->blocks_visited.fetch_add(1, std::memory_order_relaxed);
      {
        detail::VisitScope scope;
        for (std::uint32_t j = 0; j < b->count; ++j)
          visit(v, rec_dst(lay, b, j), rec_weight(lay, b, j));
      }
      ctx.counters->records_visited.fetch_add(b->count,
                                              std::memory_order_relaxed);
      b = b->next;
    }
  }
}

// Point lookup. A level-0 vertex is one cache-resident binary search and
// never suspends; a tree descent steps per node root -> leaf, the hotness
// index being the depth. Result lands in *out (nullopt on miss).
inline CoroTask find_neighbor(ExecContext ctx, const Graph& g, VertexId src,
                              VertexId dst, std::optional<EdgeRecord>* out) {
  ctx.counters->tasks_run.fetch_add(1, std::memory_order_relaxed);
  *out = std::nullopt;
  const VertexRecord& r = g.record(src);
  const BlockLayout& lay = g.layout();
  const Block* b = r.query;
  if (!b) co_return;

  if (r.level == 0) {
    ctx.counters->node_visits.fetch_add(1, std::memory_order_relaxed);
    std::uint32_t pos = rec_lower_bound(lay, b, dst);
    if (pos < b->count && rec_dst(lay, b, pos) == dst)
      *out = EdgeRecord{dst, rec_weight(lay, b, pos)};
    co_return;
  }

  std::uint32_t depth = 0;
  while (b->kind == BlockKind::kInternal) {
    co_await block_step(ctx, b, lay.node_bytes, BlockKind::kInternal, depth++);
    ctx.counters->node_visits.fetch_add(1, std::memory_order_relaxed);
    const VertexId* keys = node_keys(b);
    std::uint32_t c = 0;
    while (c < b->count && dst >= keys[c]) ++c;
    b = node_children(lay, b)[c];
  }
  co_await block_step(ctx, b, lay.leaf_bytes, BlockKind::kLeaf, depth);
  ctx.counters->node_visits.fetch_add(1, std::memory_order_relaxed);
  std::uint32_t pos = rec_lower_bound(lay, b, dst);
  if (pos < b->count && rec_dst(lay, b, pos) == dst)
    *out = EdgeRecord{dst, rec_weight(lay, b, pos)};
}

// Plain table sweep over live vertices: visit(id, prop). Not a coroutine;
// the vertex table is dense and hardware-prefetch friendly.
template <class Visit>
void scan_vertices(const Graph& g, Visit visit) {
  detail::VisitScope scope;
  for (VertexId v = 0; v < g.vertex_slots(); ++v)
    if (g.is_live(v)) visit(v, g.vertex_prop(v));
}

}  // namespace weft
