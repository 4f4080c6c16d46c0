// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "weft/counters.hpp"
#include "weft/graph.hpp"
#include "weft/strategy.hpp"

namespace weft {

// Analysis workloads built on the parallel scan/frontier machinery. Every
// result is a dense array indexed by vertex id; deleted slots hold the
// stated sentinel and never influence live results. All of them promise the
// same output for any strategy, scheduler, partitioner, or thread count:
// shared state advances only through claim-once writes, CAS-min, or integer
// accumulation, none of which can see scheduling order.

inline constexpr std::uint32_t kUnreachedHops = 0xffffffffu;

// Hop distances from source; unreached and deleted slots hold
// kUnreachedHops. Throws UnknownVertex for a dead source.
std::vector<std::uint32_t> bfs(const Graph& g, const StrategyConfig& cfg,
                               Counters& counters, std::uint32_t threads,
                               VertexId source);

// Shortest weighted distances from source (weights are non-negative by load
// contract); unreached and deleted slots hold +infinity.
std::vector<double> sssp(const Graph& g, const StrategyConfig& cfg,
                         Counters& counters, std::uint32_t threads,
                         VertexId source);

// Power iteration with uniform teleport and dangling mass spread over live
// vertices; out-degrees count live destinations only. Deleted slots hold 0.
// Ranks over live vertices sum to 1 within accumulation noise.
std::vector<double> pagerank(const Graph& g, const StrategyConfig& cfg,
                             Counters& counters, std::uint32_t threads,
                             std::uint32_t iters, double damping = 0.85);

// Weakly-connected components: label = smallest vertex id in the component
// (edges treated as undirected). Deleted slots hold kNoVertex.
std::vector<VertexId> connected_components(const Graph& g,
                                           const StrategyConfig& cfg,
                                           Counters& counters,
                                           std::uint32_t threads);

// Synchronous label propagation for a fixed number of rounds. Each round a
// vertex tallies its in-neighbors' labels plus one vote for its own and
// adopts the most frequent, smallest label on ties (the self-vote keeps
// mutual pairs from swapping forever). Deleted slots hold kNoVertex.
std::vector<VertexId> label_propagation(const Graph& g,
                                        const StrategyConfig& cfg,
                                        Counters& counters,
                                        std::uint32_t threads,
                                        std::uint32_t iters);

struct QueryStats {
  std::uint64_t queries = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t weight_checksum = 0;  // order-free digest of hit weights
};

// Point-lookup workload over storage truth: ceil(fraction * records)
// sampled existing records plus an equal count of rejection-sampled absent
// pairs (live endpoints), shuffled by seed and answered through gated
// lookup tasks. Sampling and tallies are wholly seed-determined.
QueryStats edge_query_workload(const Graph& g, const StrategyConfig& cfg,
                               Counters& counters, std::uint32_t threads,
                               double fraction, std::uint64_t seed);

}  // namespace weft
