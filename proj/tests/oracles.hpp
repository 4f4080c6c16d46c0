// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0
//
// Reference implementations the engine is checked against. Everything here
// is deliberately naive: plain maps, queues, dense matrices. If the engine
// and these disagree, the engine is wrong.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "weft/rng.hpp"
#include "weft/types.hpp"

namespace weft::testing {

// Mirror of the store's visible semantics over std::map: upsert on duplicate
// insert, lazy dangling in-edges after vertex deletion, ids never reused.
class AdjacencyOracle {
 public:
  VertexId insert_vertex() {
    adj_.emplace_back();
    live_.push_back(true);
    return VertexId(adj_.size() - 1);
  }

  // true = new record, false = weight overwrite.
  bool insert_edge(VertexId src, VertexId dst, Weight w) {
    auto [it, fresh] = adj_[src].insert_or_assign(dst, w);
    (void)it;
    return fresh;
  }

  bool delete_edge(VertexId src, VertexId dst) {
    return adj_[src].erase(dst) > 0;
  }

  bool update_edge_weight(VertexId src, VertexId dst, Weight w) {
    auto it = adj_[src].find(dst);
    if (it == adj_[src].end()) return false;
    it->second = w;
    return true;
  }

  void delete_vertex(VertexId v) {
    adj_[v].clear();
    live_[v] = false;
    // In-edges in other vertices' maps stay: the store keeps them dangling.
  }

  bool is_live(VertexId v) const { return v < live_.size() && live_[v]; }
  std::size_t slots() const { return adj_.size(); }

  std::size_t live_count() const {
    std::size_t n = 0;
    for (bool b : live_) n += b;
    return n;
  }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (std::size_t v = 0; v < adj_.size(); ++v)
      if (live_[v]) n += adj_[v].size();
    return n;
  }

  std::uint32_t degree(VertexId v) const {
    return std::uint32_t(adj_[v].size());
  }

  std::vector<EdgeRecord> neighbors(VertexId v) const {
    std::vector<EdgeRecord> out;
    out.reserve(adj_[v].size());
    for (auto& [dst, w] : adj_[v]) out.push_back({dst, w});
    return out;  // std::map iterates in key order
  }

  const std::map<VertexId, Weight>& raw(VertexId v) const { return adj_[v]; }

 private:
  std::vector<std::map<VertexId, Weight>> adj_;
  std::vector<bool> live_;
};

// Directed edge list form used by the algorithm oracles. Dangling edges (to
// non-live vertices) are expected to be filtered by the caller before this.
struct OracleGraph {
  std::size_t n = 0;                       // vertex slots
  std::vector<bool> live;                  // live[v]
  std::vector<std::vector<EdgeRecord>> out;  // out[v] sorted by dst
};

inline constexpr std::uint32_t kUnreachedHops = 0xffffffffu;

inline std::vector<std::uint32_t> bfs_oracle(const OracleGraph& g, VertexId src) {
  std::vector<std::uint32_t> dist(g.n, kUnreachedHops);
  if (src >= g.n || !g.live[src]) return dist;
  std::queue<VertexId> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    VertexId u = q.front();
    q.pop();
    for (const auto& e : g.out[u]) {
      if (!g.live[e.dst] || dist[e.dst] != kUnreachedHops) continue;
      dist[e.dst] = dist[u] + 1;
      q.push(e.dst);
    }
  }
  return dist;
}

inline std::vector<double> dijkstra_oracle(const OracleGraph& g, VertexId src) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.n, inf);
  if (src >= g.n || !g.live[src]) return dist;
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[src] = 0.0;
  pq.push({0.0, src});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (const auto& e : g.out[u]) {
      if (!g.live[e.dst]) continue;
      double nd = d + double(e.weight);
      if (nd < dist[e.dst]) {
        dist[e.dst] = nd;
        pq.push({nd, e.dst});
      }
    }
  }
  return dist;
}

// Dense power iteration. Uniform (1-d)/N base, dangling mass spread uniformly
// over live vertices. Degrees count only live destinations.
inline std::vector<double> pagerank_oracle(const OracleGraph& g,
                                           std::size_t iters, double damping) {
  std::size_t live_n = 0;
  for (std::size_t v = 0; v < g.n; ++v) live_n += g.live[v];
  std::vector<double> rank(g.n, 0.0), next(g.n, 0.0);
  if (live_n == 0) return rank;
  std::vector<std::size_t> outdeg(g.n, 0);
  for (std::size_t v = 0; v < g.n; ++v) {
    if (!g.live[v]) continue;
    for (const auto& e : g.out[v])
      if (g.live[e.dst]) ++outdeg[v];
  }
  for (std::size_t v = 0; v < g.n; ++v)
    if (g.live[v]) rank[v] = 1.0 / double(live_n);
  for (std::size_t it = 0; it < iters; ++it) {
    double dangling = 0.0;
    for (std::size_t v = 0; v < g.n; ++v)
      if (g.live[v] && outdeg[v] == 0) dangling += rank[v];
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t u = 0; u < g.n; ++u) {
      if (!g.live[u] || outdeg[u] == 0) continue;
      double share = rank[u] / double(outdeg[u]);
      for (const auto& e : g.out[u])
        if (g.live[e.dst]) next[e.dst] += share;
    }
    for (std::size_t v = 0; v < g.n; ++v) {
      if (!g.live[v]) continue;
      next[v] = (1.0 - damping) / double(live_n) +
                damping * (next[v] + dangling / double(live_n));
    }
    rank.swap(next);
  }
  return rank;
}

// Weakly connected components via union-find; label = min vertex id in the
// component. Non-live vertices get kNoVertex.
inline std::vector<VertexId> cc_oracle(const OracleGraph& g) {
  std::vector<VertexId> parent(g.n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<VertexId(VertexId)> find = [&](VertexId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t u = 0; u < g.n; ++u) {
    if (!g.live[u]) continue;
    for (const auto& e : g.out[u]) {
      if (!g.live[e.dst]) continue;
      VertexId a = find(VertexId(u)), b = find(e.dst);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<VertexId> label(g.n, kNoVertex);
  for (std::size_t v = 0; v < g.n; ++v)
    if (g.live[v]) label[v] = find(VertexId(v));
  return label;
}

// Synchronous label propagation: each round every live vertex tallies its
// in-neighbors' labels plus one vote for its own, then adopts the most
// frequent, smallest label on ties. The self-vote is what makes a mutual
// pair settle on the smaller label instead of swapping forever.
inline std::vector<VertexId> lp_oracle(const OracleGraph& g, std::size_t iters) {
  std::vector<VertexId> label(g.n, kNoVertex);
  for (std::size_t v = 0; v < g.n; ++v)
    if (g.live[v]) label[v] = VertexId(v);
  std::vector<VertexId> next(g.n);
  for (std::size_t it = 0; it < iters; ++it) {
    std::vector<std::map<VertexId, std::size_t>> hist(g.n);
    for (std::size_t v = 0; v < g.n; ++v)
      if (g.live[v]) ++hist[v][label[v]];
    for (std::size_t u = 0; u < g.n; ++u) {
      if (!g.live[u]) continue;
      for (const auto& e : g.out[u])
        if (g.live[e.dst]) ++hist[e.dst][label[u]];
    }
    for (std::size_t v = 0; v < g.n; ++v) {
      next[v] = label[v];
      if (!g.live[v]) continue;
      VertexId best = kNoVertex;
      std::size_t best_n = 0;
      for (auto& [lab, cnt] : hist[v]) {  // map order: smallest label first
        if (cnt > best_n) {
          best = lab;
          best_n = cnt;
        }
      }
      next[v] = best;
    }
    label = next;
  }
  return label;
}

// --- random graph material ---------------------------------------------------

struct RandomEdge {
  VertexId src, dst;
  Weight w;
};

// count edges over [0, n) with integer weights in [1, 100]; duplicates
// collapse by upsert exactly like the store does.
inline std::vector<RandomEdge> random_edges(std::size_t n, std::size_t count,
                                            std::uint64_t seed) {
  Rng rng(seed);
  std::vector<RandomEdge> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    VertexId s = VertexId(rng.below(n));
    VertexId d = VertexId(rng.below(n));
    Weight w = Weight(rng.range(1, 100));
    out.push_back({s, d, w});
  }
  return out;
}

}  // namespace weft::testing
