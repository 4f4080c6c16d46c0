// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "weft/counters.hpp"
#include "weft/graph.hpp"
#include "weft/strategy.hpp"

namespace weft {

enum class UpdateKind : std::uint8_t {
  kInsertEdge = 0,
  kDeleteEdge = 1,
  kUpdateEdgeWeight = 2,
  kInsertVertex = 3,
  kDeleteVertex = 4,
  kUpdateVertexProp = 5,
};

struct UpdateOp {
  UpdateKind kind = UpdateKind::kInsertEdge;
  VertexId src = kNoVertex;
  VertexId dst = kNoVertex;
  Weight weight = 0.0f;
  float prop = 0.0f;
  std::string external;  // insert-vertex token

  static UpdateOp insert_edge(VertexId s, VertexId d, Weight w) {
    UpdateOp op;
    op.kind = UpdateKind::kInsertEdge;
    op.src = s;
    op.dst = d;
    op.weight = w;
    return op;
  }
  static UpdateOp delete_edge(VertexId s, VertexId d) {
    UpdateOp op;
    op.kind = UpdateKind::kDeleteEdge;
    op.src = s;
    op.dst = d;
    return op;
  }
  static UpdateOp update_edge_weight(VertexId s, VertexId d, Weight w) {
    UpdateOp op;
    op.kind = UpdateKind::kUpdateEdgeWeight;
    op.src = s;
    op.dst = d;
    op.weight = w;
    return op;
  }
  static UpdateOp insert_vertex(std::string external, float prop = 0.0f) {
    UpdateOp op;
    op.kind = UpdateKind::kInsertVertex;
    op.external = std::move(external);
    op.prop = prop;
    return op;
  }
  static UpdateOp delete_vertex(VertexId v) {
    UpdateOp op;
    op.kind = UpdateKind::kDeleteVertex;
    op.src = v;
    return op;
  }
  static UpdateOp update_vertex_prop(VertexId v, float prop) {
    UpdateOp op;
    op.kind = UpdateKind::kUpdateVertexProp;
    op.src = v;
    op.prop = prop;
    return op;
  }
};

struct OpError {
  std::size_t index = 0;  // position in the submitted batch
  ErrorCode code = ErrorCode::kOk;
  std::string message;
};

struct BatchStats {
  std::size_t applied = 0;  // ops that did not error (no-ops count)
  std::size_t vertex_ops = 0;
  std::size_t edge_ops = 0;
  std::uint64_t resumes = 0;
  std::vector<OpError> errors;  // ascending batch index
};

// Edge-op indices grouped by source: within a group the batch order is kept,
// groups come heaviest first (ties toward the smaller source id) so the
// round-robin hand-out can't strand one giant group at the tail.
std::vector<std::vector<std::size_t>> group_by_source(
    const std::vector<UpdateOp>& ops);

// Apply one batch atomically with respect to readers (one exclusive
// acquisition of the structure lock). Vertex ops run first, serially, in
// batch order; edge ops then run grouped by source across threads * m worker
// tasks, each group replaying its ops in batch order. A group task walks the
// source's lookup path through gated block steps before each mutation, so
// batches benefit from the same prefetch interleaving as reads. Storage
// errors are reported per op, never thrown.
BatchStats batch_update(Graph& g, const StrategyConfig& cfg, Counters& counters,
                        std::uint32_t threads, const std::vector<UpdateOp>& ops);

}  // namespace weft
