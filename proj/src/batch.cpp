// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#include "weft/batch.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

#include "weft/access.hpp"
#include "weft/parallel.hpp"
#include "weft/scheduler.hpp"

namespace weft {

namespace {

bool is_vertex_op(UpdateKind k) {
  return k == UpdateKind::kInsertVertex || k == UpdateKind::kDeleteVertex ||
         k == UpdateKind::kUpdateVertexProp;
}

// Touch the blocks a mutation of (src, dst) is about to walk, suspending per
// block like any other gated access. The mutation itself then runs hard on a
// warm path.
CoroTask apply_group(ExecContext ctx, Graph& g,
                     const std::vector<UpdateOp>& ops,
                     const std::vector<std::size_t>& idxs,
                     std::vector<OpError>* errors) {
  ctx.counters->tasks_run.fetch_add(1, std::memory_order_relaxed);
  const BlockLayout& lay = g.layout();
  for (std::size_t idx : idxs) {
    const UpdateOp& op = ops[idx];
    if (g.is_live(op.src) && g.record(op.src).query) {
      const Block* b = g.record(op.src).query;
      std::uint32_t depth = 0;
      while (b->kind == BlockKind::kInternal) {
        co_await block_step(ctx, b, lay.node_bytes, BlockKind::kInternal,
                            depth++);
        ctx.counters->node_visits.fetch_add(1, std::memory_order_relaxed);
        const VertexId* keys = node_keys(b);
        std::uint32_t c = 0;
        while (c < b->count && op.dst >= keys[c]) ++c;
        b = node_children(lay, b)[c];
      }
      co_await block_step(ctx, b, block_bytes(lay, b->kind), b->kind, depth);
      ctx.counters->node_visits.fetch_add(1, std::memory_order_relaxed);
    }
    try {
      switch (op.kind) {
        case UpdateKind::kInsertEdge:
          g.insert_edge_impl(op.src, op.dst, op.weight);
          break;
        case UpdateKind::kDeleteEdge:
          g.delete_edge_impl(op.src, op.dst);
          break;
        case UpdateKind::kUpdateEdgeWeight:
          g.update_edge_weight_impl(op.src, op.dst, op.weight);
          break;
        default:
          throw InvalidArgument("vertex op reached the edge phase");
      }
    } catch (const Error& e) {
      errors->push_back({idx, e.code(), e.what()});
    }
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> group_by_source(
    const std::vector<UpdateOp>& ops) {
  std::unordered_map<VertexId, std::size_t> slot;
  std::vector<VertexId> srcs;
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (is_vertex_op(ops[i].kind)) continue;
    auto [it, fresh] = slot.try_emplace(ops[i].src, groups.size());
    if (fresh) {
      groups.emplace_back();
      srcs.push_back(ops[i].src);
    }
    groups[it->second].push_back(i);
  }
  std::vector<std::size_t> order(groups.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (groups[a].size() != groups[b].size())
      return groups[a].size() > groups[b].size();
    return srcs[a] < srcs[b];
  });
  std::vector<std::vector<std::size_t>> out;
  out.reserve(order.size());
  for (std::size_t i : order) out.push_back(std::move(groups[i]));
  return out;
}

BatchStats batch_update(Graph& g, const StrategyConfig& cfg, Counters& counters,
                        std::uint32_t threads, const std::vector<UpdateOp>& ops) {
  if (threads == 0) throw InvalidArgument("thread count must be >= 1");
  std::unique_lock lock(g.structure_mutex());
  BatchStats stats;

  // Vertex ops first, serially, in batch order: edge ops later in the same
  // batch see every vertex born or killed here.
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const UpdateOp& op = ops[i];
    if (!is_vertex_op(op.kind)) continue;
    ++stats.vertex_ops;
    try {
      switch (op.kind) {
        case UpdateKind::kInsertVertex:
          g.insert_vertex_impl(op.external, op.prop);
          break;
        case UpdateKind::kDeleteVertex:
          g.delete_vertex_impl(op.src);
          break;
        case UpdateKind::kUpdateVertexProp:
          g.update_vertex_prop_impl(op.src, op.prop);
          break;
        default:
          break;
      }
    } catch (const Error& e) {
      stats.errors.push_back({i, e.code(), e.what()});
    }
  }

  auto groups = group_by_source(ops);
  for (auto& grp : groups) stats.edge_ops += grp.size();

  if (!groups.empty()) {
    const std::size_t m = std::max<std::uint32_t>(cfg.coroutines, 1);
    std::vector<std::vector<OpError>> errs(threads);
    std::vector<std::uint64_t> resumes(threads, 0);
    run_threads(threads, [&](std::uint32_t t) {
      // Round-robin hand-out: heaviest-first order balances the tail.
      std::vector<const std::vector<std::size_t>*> mine;
      for (std::size_t gi = t; gi < groups.size(); gi += threads)
        mine.push_back(&groups[gi]);
      auto st = trimmed_refill_run(
          cfg, counters, m, mine.size(), [&](std::size_t j, ExecContext ctx) {
            return apply_group(ctx, g, ops, *mine[j], &errs[t]);
          });
      resumes[t] = st.resumes;
    });
    for (auto& e : errs)
      stats.errors.insert(stats.errors.end(), e.begin(), e.end());
    for (auto r : resumes) stats.resumes += r;
  }

  std::sort(stats.errors.begin(), stats.errors.end(),
            [](const OpError& a, const OpError& b) { return a.index < b.index; });
  stats.applied = ops.size() - stats.errors.size();
  return stats;
}

}  // namespace weft
