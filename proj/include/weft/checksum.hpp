// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstring>
#include <shared_mutex>

#include "weft/graph.hpp"
#include "weft/rng.hpp"

namespace weft {

// Order-independent digest of the live graph: wrapping sum of mixed
// (src, dst, weight) triples over records with live endpoints, plus the live
// vertices and their props. Equal graphs digest equal no matter how they
// were built; that is what batch-size and shuffle invariance tests compare.
inline std::uint64_t graph_checksum(const Graph& g) {
  std::shared_lock lock(g.structure_mutex());
  std::uint64_t h = 0;
  for (VertexId v = 0; v < g.vertex_slots(); ++v) {
    if (!g.is_live(v)) continue;
    const std::uint64_t vh = mix64(0x517cc1b727220a95ull ^ v);
    float p = g.vertex_prop(v);
    std::uint32_t pb;
    std::memcpy(&pb, &p, sizeof pb);
    h += mix64(vh ^ 0xd1b54a32d192ed03ull ^ pb);
    g.for_neighbors(v, [&](VertexId d, Weight w) {
      if (!g.is_live(d)) return;
      std::uint32_t wb;
      std::memcpy(&wb, &w, sizeof wb);
      h += mix64(vh ^ (std::uint64_t(d) << 32) ^ wb);
    });
  }
  return h;
}

}  // namespace weft
