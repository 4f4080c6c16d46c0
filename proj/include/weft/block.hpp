// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cassert>
#include <cstddef>
#include <cstring>
#include <new>

#include "weft/config.hpp"
#include "weft/types.hpp"

namespace weft {

enum class BlockKind : std::uint8_t { kChunk = 0, kLeaf = 1, kInternal = 2 };

// One allocation on the adjacency store. Chunks and tree leaves carry sorted
// edge records and sit on the global scan chain via `next`; internal tree
// nodes carry keys/children and are reachable only from the per-vertex root.
// The payload layout depends on kind and PropertyMode; use the accessors.
struct Block {
  Block* next;
  VertexId owner;
  std::uint16_t count;
  BlockKind kind;
  std::uint8_t reserved;

  std::byte* payload() { return reinterpret_cast<std::byte*>(this) + sizeof(Block); }
  const std::byte* payload() const {
    return reinterpret_cast<const std::byte*>(this) + sizeof(Block);
  }
};
static_assert(sizeof(Block) == 16);

namespace detail {
inline std::size_t round_up(std::size_t n, std::size_t align) {
  return (n + align - 1) / align * align;
}
}  // namespace detail

inline BlockLayout BlockLayout::derive(const GraphConfig& cfg) {
  BlockLayout out;
  out.line = cfg.cache_line_bytes;
  out.mode = cfg.property_mode;
  if (out.line < 16 || (out.line & (out.line - 1)) != 0)
    throw InvalidArgument("cache line size must be a power of two >= 16");

  const std::size_t hdr = sizeof(Block) +
      (out.mode == PropertyMode::kParallel ? sizeof(Weight*) : 0);
  const std::size_t rec =
      out.mode == PropertyMode::kParallel ? sizeof(VertexId) : sizeof(EdgeRecord);

  auto fit_bytes = [&](std::uint32_t cap) {
    return detail::round_up(hdr + std::size_t(cap) * rec, out.line);
  };
  auto fit_cap = [&](std::size_t bytes) {
    return std::uint32_t((bytes - hdr) / rec);
  };

  if (cfg.chunk_capacity_override) {
    out.chunk_capacity = cfg.chunk_capacity_override;
    out.chunk_bytes = fit_bytes(out.chunk_capacity);
  } else {
    out.chunk_bytes = std::size_t(cfg.chunk_lines) * out.line;
    out.chunk_capacity = fit_cap(out.chunk_bytes);
  }
  if (cfg.leaf_capacity_override) {
    out.leaf_capacity = cfg.leaf_capacity_override;
    out.leaf_bytes = fit_bytes(out.leaf_capacity);
  } else {
    out.leaf_bytes = std::size_t(cfg.chunk_lines) * out.line;
    out.leaf_capacity = fit_cap(out.leaf_bytes);
  }

  if (cfg.fanout_override) {
    out.fanout = cfg.fanout_override;
    std::size_t keys = detail::round_up(
        sizeof(Block) + sizeof(VertexId) * (out.fanout - 1), alignof(Block*));
    out.node_bytes = detail::round_up(keys + sizeof(Block*) * out.fanout, out.line);
  } else {
    out.node_bytes = std::size_t(cfg.node_lines) * out.line;
    std::uint32_t f = 4;
    for (std::uint32_t cand = 4;; ++cand) {
      std::size_t keys = detail::round_up(
          sizeof(Block) + sizeof(VertexId) * (cand - 1), alignof(Block*));
      if (keys + sizeof(Block*) * cand > out.node_bytes) break;
      f = cand;
    }
    out.fanout = f;
  }

  if (out.fanout < 4) throw InvalidArgument("tree fanout must be >= 4");
  if (out.chunk_capacity < 2 || out.leaf_capacity < 2)
    throw InvalidArgument("block capacity must be >= 2");
  return out;
}

inline std::size_t block_bytes(const BlockLayout& lay, BlockKind kind) {
  switch (kind) {
    case BlockKind::kChunk: return lay.chunk_bytes;
    case BlockKind::kLeaf: return lay.leaf_bytes;
    case BlockKind::kInternal: return lay.node_bytes;
  }
  return 0;
}

inline std::uint32_t block_capacity(const BlockLayout& lay, BlockKind kind) {
  return kind == BlockKind::kChunk ? lay.chunk_capacity : lay.leaf_capacity;
}

// --- record blocks (chunk / leaf) ------------------------------------------

// Parallel mode keeps a pointer to the side property array as the first
// payload word; destinations follow. Inline mode lays EdgeRecords out directly.
inline Weight*& parallel_props(Block* b) {
  return *reinterpret_cast<Weight**>(b->payload());
}
inline Weight* parallel_props(const Block* b) {
  return *reinterpret_cast<Weight* const*>(b->payload());
}

inline VertexId rec_dst(const BlockLayout& lay, const Block* b, std::uint32_t i) {
  if (lay.mode == PropertyMode::kParallel) {
    auto* dsts = reinterpret_cast<const VertexId*>(b->payload() + sizeof(Weight*));
    return dsts[i];
  }
  auto* recs = reinterpret_cast<const EdgeRecord*>(b->payload());
  return recs[i].dst;
}

inline Weight rec_weight(const BlockLayout& lay, const Block* b, std::uint32_t i) {
  if (lay.mode == PropertyMode::kParallel) return parallel_props(b)[i];
  auto* recs = reinterpret_cast<const EdgeRecord*>(b->payload());
  return recs[i].weight;
}

inline void rec_set(const BlockLayout& lay, Block* b, std::uint32_t i,
                    VertexId dst, Weight w) {
  if (lay.mode == PropertyMode::kParallel) {
    auto* dsts = reinterpret_cast<VertexId*>(b->payload() + sizeof(Weight*));
    dsts[i] = dst;
    parallel_props(b)[i] = w;
  } else {
    auto* recs = reinterpret_cast<EdgeRecord*>(b->payload());
    recs[i] = EdgeRecord{dst, w};
  }
}

inline void rec_set_weight(const BlockLayout& lay, Block* b, std::uint32_t i, Weight w) {
  if (lay.mode == PropertyMode::kParallel) {
    parallel_props(b)[i] = w;
  } else {
    reinterpret_cast<EdgeRecord*>(b->payload())[i].weight = w;
  }
}

// First index whose dst >= target (records are sorted by dst).
inline std::uint32_t rec_lower_bound(const BlockLayout& lay, const Block* b,
                                     VertexId target) {
  std::uint32_t lo = 0, hi = b->count;
  while (lo < hi) {
    std::uint32_t mid = (lo + hi) / 2;
    if (rec_dst(lay, b, mid) < target) lo = mid + 1;
    else hi = mid;
  }
  return lo;
}

inline void rec_insert_at(const BlockLayout& lay, Block* b, std::uint32_t pos,
                          VertexId dst, Weight w) {
  assert(b->count < block_capacity(lay, b->kind));
  for (std::uint32_t i = b->count; i > pos; --i)
    rec_set(lay, b, i, rec_dst(lay, b, i - 1), rec_weight(lay, b, i - 1));
  rec_set(lay, b, pos, dst, w);
  ++b->count;
}

inline void rec_remove_at(const BlockLayout& lay, Block* b, std::uint32_t pos) {
  assert(pos < b->count);
  for (std::uint32_t i = pos; i + 1 < b->count; ++i)
    rec_set(lay, b, i, rec_dst(lay, b, i + 1), rec_weight(lay, b, i + 1));
  --b->count;
}

// --- internal nodes ---------------------------------------------------------

// count keys and count+1 children; child i holds dsts < key[i], child count
// holds the rest. Keys are the smallest dst of the subtree to their right.
inline VertexId* node_keys(Block* b) {
  return reinterpret_cast<VertexId*>(b->payload());
}
inline const VertexId* node_keys(const Block* b) {
  return reinterpret_cast<const VertexId*>(b->payload());
}

inline Block** node_children(const BlockLayout& lay, Block* b) {
  std::size_t off = detail::round_up(
      sizeof(Block) + sizeof(VertexId) * (lay.fanout - 1), alignof(Block*));
  return reinterpret_cast<Block**>(reinterpret_cast<std::byte*>(b) + off);
}
inline Block* const* node_children(const BlockLayout& lay, const Block* b) {
  return node_children(lay, const_cast<Block*>(b));
}

// --- allocation -------------------------------------------------------------

Block* alloc_block(const BlockLayout& lay, BlockKind kind, VertexId owner);
void free_block(const BlockLayout& lay, Block* b);

}  // namespace weft
