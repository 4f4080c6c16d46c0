// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "weft/graph.hpp"

namespace weft {

// A contiguous slice of the scan chain: blocks [start, end), end exclusive
// and possibly null for the final slice. blocks is the expected walk length;
// walkers throw InvalidSubChain when the chain runs out early.
struct SubChain {
  const Block* start = nullptr;
  const Block* end = nullptr;
  std::size_t blocks = 0;
};

struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive
};

// Split n items into min(n, parts) consecutive pieces whose sizes differ by
// at most one (larger pieces first).
std::vector<IndexRange> partition_range(std::size_t n, std::uint32_t parts);

// Same arithmetic over the graph's scan chain, one walk total.
std::vector<SubChain> partition_chain(const Graph& g, std::uint32_t parts);

}  // namespace weft
