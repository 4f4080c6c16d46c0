// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>

#include "weft/types.hpp"

namespace weft {

// Where edge properties live: inline next to each destination id, or in a
// parallel per-block array off to the side. Semantics are identical; the
// parallel mode packs more destinations per block.
enum class PropertyMode : std::uint8_t { kInline = 0, kParallel = 1 };

struct GraphConfig {
  // Cache-line size every block size is a multiple of. Configurable at
  // construction for odd targets; 64 everywhere that matters.
  std::size_t cache_line_bytes = 64;
  // Block byte budgets, in cache lines.
  std::uint32_t chunk_lines = 4;
  std::uint32_t node_lines = 4;
  PropertyMode property_mode = PropertyMode::kInline;

  // Test knobs: force tiny capacities to exercise promotion/splits cheaply.
  // 0 means "derive from the byte budget". Block allocations stay rounded up
  // to whole cache lines either way.
  std::uint32_t chunk_capacity_override = 0;
  std::uint32_t leaf_capacity_override = 0;
  std::uint32_t fanout_override = 0;
};

// Byte-level layout derived once per graph from GraphConfig.
struct BlockLayout {
  std::size_t line = 64;
  std::size_t chunk_bytes = 256;
  std::size_t leaf_bytes = 256;
  std::size_t node_bytes = 256;    // internal tree nodes
  std::uint32_t chunk_capacity = 0;  // records per chunk
  std::uint32_t leaf_capacity = 0;   // records per leaf
  std::uint32_t fanout = 0;          // max children per internal node
  PropertyMode mode = PropertyMode::kInline;

  std::uint32_t min_fill(std::uint32_t cap) const { return (cap + 1) / 2; }

  static BlockLayout derive(const GraphConfig& cfg);
};

}  // namespace weft
