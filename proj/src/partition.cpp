// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#include "weft/partition.hpp"

namespace weft {

std::vector<IndexRange> partition_range(std::size_t n, std::uint32_t parts) {
  if (parts == 0) throw InvalidArgument("cannot partition into zero parts");
  std::size_t count = std::min<std::size_t>(n, parts);
  std::vector<IndexRange> out;
  out.reserve(count);
  std::size_t base = count ? n / count : 0, extra = count ? n % count : 0;
  std::size_t at = 0;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t take = base + (i < extra ? 1 : 0);
    out.push_back({at, at + take});
    at += take;
  }
  return out;
}

std::vector<SubChain> partition_chain(const Graph& g, std::uint32_t parts) {
  auto ranges = partition_range(g.block_count(), parts);
  std::vector<SubChain> out;
  out.reserve(ranges.size());
  const Block* b = g.chain_head();
  for (const IndexRange& r : ranges) {
    SubChain part;
    part.start = b;
    part.blocks = r.end - r.begin;
    for (std::size_t i = 0; i < part.blocks; ++i) b = b->next;
    part.end = b;
    out.push_back(part);
  }
  return out;
}

}  // namespace weft
