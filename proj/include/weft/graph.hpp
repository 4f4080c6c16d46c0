// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <deque>
#include <functional>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "weft/block.hpp"
#include "weft/config.hpp"
#include "weft/types.hpp"

namespace weft {

// Per-vertex bookkeeping. A vertex with degree 0 owns no blocks (lazy
// allocation). level 0 means the neighborhood lives in one chunk and
// query == traversal; level k > 0 means a tree whose k leaves hang off
// traversal (leftmost leaf) while query points at the root. tail caches the
// vertex's last block on the scan chain so chain repairs are cheap.
struct VertexRecord {
  Block* traversal = nullptr;
  Block* query = nullptr;
  Block* tail = nullptr;
  std::uint32_t degree = 0;
  std::uint32_t level = 0;
  float prop = 0.0f;
  bool deleted = false;
};

struct AuditReport {
  bool ok = false;
  bool ordered = false;
  std::size_t block_count = 0;
  std::size_t edge_count = 0;
  std::string message;  // first violation; empty when ok
};

// Block-chained adjacency store.
//
// Every vertex's records are sorted by destination and packed into
// cache-line-multiple blocks: one chunk while the neighborhood is small, a
// B+ tree of leaves once it outgrows the chunk (never demoted back). All
// chunks and leaves are threaded onto one global scan chain, grouped by owner
// in ascending id order, so full scans are a pointer walk instead of a
// per-vertex pointer chase.
//
// Locking: single writer, multiple readers at the structure level. Queries
// and scans take the structure lock shared; every public mutator takes it
// exclusive. Batch updates hold one exclusive acquisition while their worker
// threads drive the *_impl entry points in parallel; those serialize per
// vertex through per-vertex mutexes and, when a chain splice crosses a vertex
// boundary, additionally lock the predecessor (always a lower id, so the
// order is acyclic) or the chain head mutex, never both at once.
class Graph {
 public:
  explicit Graph(GraphConfig cfg = {});
  ~Graph();
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  // --- id map ---------------------------------------------------------------
  VertexId insert_vertex(std::string_view external, float prop = 0.0f);
  VertexId lookup(std::string_view external) const;  // kNoVertex when absent
  const std::string& external_id(VertexId v) const;

  // --- mutators ---------------------------------------------------------
  // insert_edge upserts: returns true for a new record, false when an
  // existing record's weight was overwritten.
  bool insert_edge(VertexId src, VertexId dst, Weight w);
  bool delete_edge(VertexId src, VertexId dst);
  // Returns true when the edge existed and was rewritten; absent edges are
  // left absent.
  bool update_edge_weight(VertexId src, VertexId dst, Weight w);
  // Frees the vertex's blocks and splices them out of the chain. In-edges
  // held by other vertices stay behind as dangling records; scans above the
  // storage layer filter them through is_live().
  void delete_vertex(VertexId v);
  void update_vertex_prop(VertexId v, float p);

  // --- queries ----------------------------------------------------------
  std::optional<EdgeRecord> find_edge(VertexId src, VertexId dst) const;
  // Block probes (chunk or tree nodes root->leaf) touched by one lookup.
  std::optional<EdgeRecord> find_edge_counted(VertexId src, VertexId dst,
                                              std::uint32_t* probes) const;
  std::vector<EdgeRecord> neighbors(VertexId v) const;

  template <class F>
  void for_neighbors(VertexId v, F&& f) const {
    check_live(v);
    const VertexRecord& r = rec(v);
    const Block* b = r.traversal;
    std::uint32_t blocks = b ? (r.level == 0 ? 1 : r.level) : 0;
    for (std::uint32_t i = 0; i < blocks; ++i, b = b->next)
      for (std::uint32_t j = 0; j < b->count; ++j)
        f(rec_dst(layout_, b, j), rec_weight(layout_, b, j));
  }

  std::uint32_t degree(VertexId v) const { return rec_checked(v).degree; }
  std::uint32_t level(VertexId v) const { return rec_checked(v).level; }
  float vertex_prop(VertexId v) const { return rec_checked(v).prop; }
  bool is_live(VertexId v) const {
    return v < table_.size() && !table_[v].deleted;
  }

  std::size_t vertex_slots() const { return table_.size(); }  // incl. deleted
  std::size_t live_vertices() const { return live_vertices_; }
  std::size_t edge_count() const { return edge_count_; }
  std::size_t block_count() const { return block_count_; }
  std::size_t node_count() const { return node_count_; }

  const VertexRecord& record(VertexId v) const { return rec_checked(v); }
  Block* chain_head() const { return head_; }
  const BlockLayout& layout() const { return layout_; }

  // Full scan-chain walk validating grouping, ordering, cached tails, and the
  // count bookkeeping. Reports instead of throwing.
  AuditReport audit() const;

  std::shared_mutex& structure_mutex() const { return structure_mtx_; }

  // Unsynchronized entry points for batch workers that already hold the
  // structure lock exclusively. Vertex mutexes are still taken inside.
  bool insert_edge_impl(VertexId src, VertexId dst, Weight w);
  bool delete_edge_impl(VertexId src, VertexId dst);
  bool update_edge_weight_impl(VertexId src, VertexId dst, Weight w);
  VertexId insert_vertex_impl(std::string_view external, float prop);
  void delete_vertex_impl(VertexId v);
  void update_vertex_prop_impl(VertexId v, float p);

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };

  struct PathEntry {
    Block* node;
    std::uint32_t child;
  };

  VertexRecord& rec(VertexId v) { return table_[v]; }
  const VertexRecord& rec(VertexId v) const { return table_[v]; }
  const VertexRecord& rec_checked(VertexId v) const {
    check_live(v);
    return table_[v];
  }
  void check_live(VertexId v) const {
    if (!is_live(v)) throw UnknownVertex(v);
  }

  // Descend the tree of v to the leaf that covers dst; fills path (internal
  // nodes only, root first).
  Block* descend(const VertexRecord& r, VertexId dst,
                 std::vector<PathEntry>& path) const;

  // Locks the vertex mutex of the nearest lower live vertex that owns blocks
  // and returns its tail; {nullptr, no lock} when v would be first.
  struct PredLock {
    std::unique_lock<std::mutex> guard;
    Block* tail = nullptr;
  };
  PredLock lock_pred(VertexId v);

  void splice_first_block(VertexId v, Block* b);
  void repoint_chain_pred(VertexId v, Block* old_first, Block* to);
  void promote_with_pending(VertexId v, VertexId dst, Weight w);
  void split_leaf_insert(VertexRecord& r, std::vector<PathEntry>& path,
                         Block* leaf, VertexId dst, Weight w);
  void insert_into_parent(VertexRecord& r, std::vector<PathEntry>& path,
                          VertexId sep, Block* right);
  void splice_leaf(VertexId v, VertexRecord& r, std::vector<PathEntry>& path,
                   Block* leaf);
  void collapse_root(VertexRecord& r);
  void free_tree_internals(Block* root);
  Block* build_tree(VertexId owner, const std::vector<EdgeRecord>& records,
                    Block** first_leaf, Block** last_leaf, std::uint32_t* leaves);

  GraphConfig cfg_;
  BlockLayout layout_;
  std::deque<VertexRecord> table_;
  std::deque<std::mutex> vertex_mtx_;
  std::deque<std::string> external_;
  std::unordered_map<std::string, VertexId, StringHash, std::equal_to<>> forward_;

  Block* head_ = nullptr;
  std::mutex head_mtx_;
  // Atomic: batch workers bump these while holding only vertex mutexes.
  std::atomic<std::size_t> edge_count_{0};
  std::atomic<std::size_t> block_count_{0};
  std::atomic<std::size_t> node_count_{0};
  std::atomic<std::size_t> live_vertices_{0};
  mutable std::shared_mutex structure_mtx_;
};

namespace detail {
// Debug contract: visit callbacks must not mutate the structure. The access
// layer bumps this around callback invocations; mutators assert it is zero.
int& visit_depth();
struct VisitScope {
  VisitScope() { ++visit_depth(); }
  ~VisitScope() { --visit_depth(); }
};
}  // namespace detail

}  // namespace weft
