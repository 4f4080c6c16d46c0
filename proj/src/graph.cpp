// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#include "weft/graph.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>

namespace weft {

namespace detail {
int& visit_depth() {
  thread_local int depth = 0;
  return depth;
}
}  // namespace detail

namespace {
void assert_not_in_visit() {
  assert(detail::visit_depth() == 0 &&
         "visit callbacks must not mutate the structure");
}
}  // namespace

Block* alloc_block(const BlockLayout& lay, BlockKind kind, VertexId owner) {
  std::size_t bytes = block_bytes(lay, kind);
  assert(bytes % lay.line == 0);
  void* mem = ::operator new(bytes, std::align_val_t(lay.line));
  std::memset(mem, 0, bytes);
  Block* b = static_cast<Block*>(mem);
  b->next = nullptr;
  b->owner = owner;
  b->count = 0;
  b->kind = kind;
  if (kind != BlockKind::kInternal && lay.mode == PropertyMode::kParallel) {
    std::size_t pbytes = detail::round_up(
        std::size_t(block_capacity(lay, kind)) * sizeof(Weight), lay.line);
    void* props = ::operator new(pbytes, std::align_val_t(lay.line));
    std::memset(props, 0, pbytes);
    parallel_props(b) = static_cast<Weight*>(props);
  }
  return b;
}

void free_block(const BlockLayout& lay, Block* b) {
  if (b->kind != BlockKind::kInternal && lay.mode == PropertyMode::kParallel)
    ::operator delete(parallel_props(b), std::align_val_t(lay.line));
  ::operator delete(static_cast<void*>(b), std::align_val_t(lay.line));
}

Graph::Graph(GraphConfig cfg) : cfg_(cfg), layout_(BlockLayout::derive(cfg)) {}

Graph::~Graph() {
  for (auto& r : table_)
    if (!r.deleted && r.level > 0) free_tree_internals(r.query);
  Block* b = head_;
  while (b) {
    Block* next = b->next;
    free_block(layout_, b);
    b = next;
  }
}

// --- id map -------------------------------------------------------------

VertexId Graph::insert_vertex(std::string_view external, float prop) {
  std::unique_lock lk(structure_mtx_);
  return insert_vertex_impl(external, prop);
}

VertexId Graph::insert_vertex_impl(std::string_view external, float prop) {
  assert_not_in_visit();
  if (forward_.find(external) != forward_.end())
    throw DuplicateExternalId(std::string(external));
  VertexId id = VertexId(table_.size());
  table_.emplace_back();
  table_.back().prop = prop;
  vertex_mtx_.emplace_back();
  external_.emplace_back(external);
  forward_.emplace(std::string(external), id);
  ++live_vertices_;
  return id;
}

VertexId Graph::lookup(std::string_view external) const {
  std::shared_lock lk(structure_mtx_);
  auto it = forward_.find(external);
  return it == forward_.end() ? kNoVertex : it->second;
}

const std::string& Graph::external_id(VertexId v) const {
  if (v >= table_.size()) throw UnknownVertex(v);
  return external_[v];
}

// --- chain plumbing -------------------------------------------------------
//
// Lock order: own vertex mutex, then lower vertex mutexes (strictly
// descending via lock_pred), then head_mtx_ last and never while holding a
// candidate's mutex. That keeps the pred protocol acyclic when batch workers
// splice concurrently.

Graph::PredLock Graph::lock_pred(VertexId v) {
  for (VertexId u = v; u > 0;) {
    --u;
    std::unique_lock lk(vertex_mtx_[u]);
    const VertexRecord& r = table_[u];
    if (!r.deleted && r.tail) return PredLock{std::move(lk), r.tail};
  }
  return {};
}

// Insert v's very first block into the chain. Caller holds v's vertex mutex.
void Graph::splice_first_block(VertexId v, Block* b) {
  for (;;) {
    PredLock pred = lock_pred(v);
    if (pred.tail) {
      b->next = pred.tail->next;
      pred.tail->next = b;
      return;
    }
    std::unique_lock hl(head_mtx_);
    // head_ writes are all under head_mtx_, so the owner test is stable; if a
    // lower vertex spliced itself in since the scan, go find it as a pred.
    if (head_ && head_->owner < v) continue;
    b->next = head_;
    head_ = b;
    return;
  }
}

// Repoint the chain link that currently targets old_first (v's first block).
void Graph::repoint_chain_pred(VertexId v, Block* old_first, Block* to) {
  for (;;) {
    {
      std::unique_lock hl(head_mtx_);
      if (head_ == old_first) {
        head_ = to;
        return;
      }
    }
    PredLock pred = lock_pred(v);
    if (pred.tail) {
      assert(pred.tail->next == old_first);
      pred.tail->next = to;
      return;
    }
  }
}

// --- tree plumbing --------------------------------------------------------

Block* Graph::descend(const VertexRecord& r, VertexId dst,
                      std::vector<PathEntry>& path) const {
  Block* n = r.query;
  while (n->kind == BlockKind::kInternal) {
    const VertexId* keys = node_keys(n);
    std::uint32_t c = 0;
    while (c < n->count && dst >= keys[c]) ++c;
    path.push_back({n, c});
    n = node_children(layout_, n)[c];
  }
  return n;
}

Block* Graph::build_tree(VertexId owner, const std::vector<EdgeRecord>& records,
                         Block** first_leaf, Block** last_leaf,
                         std::uint32_t* leaves_out) {
  const std::size_t n = records.size();
  const std::uint32_t cap = layout_.leaf_capacity;
  const std::size_t leaves = (n + cap - 1) / cap;
  assert(leaves >= 1);

  std::vector<Block*> level;
  std::vector<VertexId> mins;
  level.reserve(leaves);
  std::size_t base = n / leaves, extra = n % leaves, at = 0;
  for (std::size_t i = 0; i < leaves; ++i) {
    std::size_t take = base + (i < extra ? 1 : 0);
    Block* leaf = alloc_block(layout_, BlockKind::kLeaf, owner);
    for (std::size_t j = 0; j < take; ++j)
      rec_set(layout_, leaf, std::uint32_t(j), records[at + j].dst,
              records[at + j].weight);
    leaf->count = std::uint16_t(take);
    at += take;
    if (!level.empty()) level.back()->next = leaf;
    mins.push_back(rec_dst(layout_, leaf, 0));
    level.push_back(leaf);
  }
  *first_leaf = level.front();
  *last_leaf = level.back();
  *leaves_out = std::uint32_t(leaves);

  // Internal levels bottom-up, children spread evenly per parent.
  while (level.size() > 1) {
    std::vector<Block*> parents;
    std::vector<VertexId> pmins;
    std::size_t c = level.size();
    std::size_t groups = (c + layout_.fanout - 1) / layout_.fanout;
    std::size_t gbase = c / groups, gextra = c % groups, gi = 0;
    for (std::size_t p = 0; p < groups; ++p) {
      std::size_t take = gbase + (p < gextra ? 1 : 0);
      Block* node = alloc_block(layout_, BlockKind::kInternal, owner);
      Block** children = node_children(layout_, node);
      VertexId* keys = node_keys(node);
      for (std::size_t j = 0; j < take; ++j) {
        children[j] = level[gi + j];
        if (j > 0) keys[j - 1] = mins[gi + j];
      }
      node->count = std::uint16_t(take - 1);
      ++node_count_;
      pmins.push_back(mins[gi]);
      parents.push_back(node);
      gi += take;
    }
    level.swap(parents);
    mins.swap(pmins);
  }
  return level.front();
}

void Graph::promote_with_pending(VertexId v, VertexId dst, Weight w) {
  VertexRecord& r = table_[v];
  Block* chunk = r.traversal;
  assert(r.level == 0 && chunk->count == layout_.chunk_capacity);

  std::vector<EdgeRecord> records;
  records.reserve(chunk->count + 1);
  bool placed = false;
  for (std::uint32_t i = 0; i < chunk->count; ++i) {
    VertexId d = rec_dst(layout_, chunk, i);
    if (!placed && dst < d) {
      records.push_back({dst, w});
      placed = true;
    }
    records.push_back({d, rec_weight(layout_, chunk, i)});
  }
  if (!placed) records.push_back({dst, w});

  Block *first = nullptr, *last = nullptr;
  std::uint32_t leaves = 0;
  Block* root = build_tree(v, records, &first, &last, &leaves);

  last->next = chunk->next;
  repoint_chain_pred(v, chunk, first);
  free_block(layout_, chunk);

  r.traversal = first;
  r.tail = last;
  r.query = root;
  r.level = leaves;
  block_count_ += leaves - 1;
}

void Graph::insert_into_parent(VertexRecord& r, std::vector<PathEntry>& path,
                               VertexId sep, Block* right) {
  if (path.empty()) {
    Block* root = alloc_block(layout_, BlockKind::kInternal, right->owner);
    Block** children = node_children(layout_, root);
    children[0] = r.query;  // the split node was the old root
    children[1] = right;
    node_keys(root)[0] = sep;
    root->count = 1;
    ++node_count_;
    r.query = root;
    return;
  }

  PathEntry top = path.back();
  path.pop_back();
  Block* node = top.node;
  VertexId* keys = node_keys(node);
  Block** children = node_children(layout_, node);
  std::uint32_t nchild = std::uint32_t(node->count) + 1;

  if (nchild < layout_.fanout) {
    for (std::uint32_t i = node->count; i > top.child; --i) keys[i] = keys[i - 1];
    for (std::uint32_t i = nchild; i > top.child + 1; --i)
      children[i] = children[i - 1];
    keys[top.child] = sep;
    children[top.child + 1] = right;
    ++node->count;
    return;
  }

  // Full: merge into scratch and split around the middle key.
  std::vector<Block*> ch(children, children + nchild);
  std::vector<VertexId> ks(keys, keys + node->count);
  ch.insert(ch.begin() + top.child + 1, right);
  ks.insert(ks.begin() + top.child, sep);

  std::uint32_t total = std::uint32_t(ch.size());
  std::uint32_t left_n = (total + 1) / 2;
  VertexId promoted = ks[left_n - 1];

  Block* rnode = alloc_block(layout_, BlockKind::kInternal, right->owner);
  Block** rch = node_children(layout_, rnode);
  VertexId* rks = node_keys(rnode);
  std::uint32_t right_n = total - left_n;
  for (std::uint32_t i = 0; i < right_n; ++i) rch[i] = ch[left_n + i];
  for (std::uint32_t i = 0; i + 1 < right_n; ++i) rks[i] = ks[left_n + i];
  rnode->count = std::uint16_t(right_n - 1);
  ++node_count_;

  for (std::uint32_t i = 0; i < left_n; ++i) children[i] = ch[i];
  for (std::uint32_t i = 0; i + 1 < left_n; ++i) keys[i] = ks[i];
  node->count = std::uint16_t(left_n - 1);    // node keeps the left half

  insert_into_parent(r, path, promoted, rnode);
}

void Graph::split_leaf_insert(VertexRecord& r, std::vector<PathEntry>& path,
                              Block* leaf, VertexId dst, Weight w) {
  const std::uint32_t cap = layout_.leaf_capacity;
  assert(leaf->count == cap);

  std::vector<EdgeRecord> records;
  records.reserve(cap + 1);
  bool placed = false;
  for (std::uint32_t i = 0; i < cap; ++i) {
    VertexId d = rec_dst(layout_, leaf, i);
    if (!placed && dst < d) {
      records.push_back({dst, w});
      placed = true;
    }
    records.push_back({d, rec_weight(layout_, leaf, i)});
  }
  if (!placed) records.push_back({dst, w});

  std::uint32_t left_n = std::uint32_t(records.size() + 1) / 2;
  Block* rleaf = alloc_block(layout_, BlockKind::kLeaf, leaf->owner);
  for (std::uint32_t i = left_n; i < records.size(); ++i)
    rec_set(layout_, rleaf, i - left_n, records[i].dst, records[i].weight);
  rleaf->count = std::uint16_t(records.size() - left_n);
  for (std::uint32_t i = 0; i < left_n; ++i)
    rec_set(layout_, leaf, i, records[i].dst, records[i].weight);
  leaf->count = std::uint16_t(left_n);

  rleaf->next = leaf->next;
  leaf->next = rleaf;
  if (r.tail == leaf) r.tail = rleaf;
  r.level += 1;
  ++block_count_;

  insert_into_parent(r, path, rec_dst(layout_, rleaf, 0), rleaf);
}

void Graph::collapse_root(VertexRecord& r) {
  while (r.query->kind == BlockKind::kInternal && r.query->count == 0) {
    Block* only = node_children(layout_, r.query)[0];
    free_block(layout_, r.query);
    --node_count_;
    r.query = only;
  }
}

void Graph::splice_leaf(VertexId v, VertexRecord& r,
                        std::vector<PathEntry>& path, Block* leaf) {
  assert(r.level > 1 && leaf->count == 0);

  // Unlink from the chain. The leftmost leaf's chain predecessor lives
  // outside the vertex; any other leaf's predecessor is a reachable sibling.
  if (r.traversal == leaf) {
    repoint_chain_pred(v, leaf, leaf->next);
    r.traversal = leaf->next;
  } else {
    Block* prev = r.traversal;
    while (prev->next != leaf) prev = prev->next;
    prev->next = leaf->next;
    if (r.tail == leaf) r.tail = prev;
  }
  free_block(layout_, leaf);
  --block_count_;
  r.level -= 1;

  // Unhook from the tree, cascading through nodes that lose their only child.
  bool removed = false;
  while (!removed) {
    assert(!path.empty());  // the root cannot empty while a leaf remains
    PathEntry top = path.back();
    path.pop_back();
    Block* node = top.node;
    std::uint32_t nchild = std::uint32_t(node->count) + 1;
    if (nchild >= 2) {
      Block** children = node_children(layout_, node);
      VertexId* keys = node_keys(node);
      for (std::uint32_t i = top.child; i + 1 < nchild; ++i)
        children[i] = children[i + 1];
      std::uint32_t kdrop = top.child > 0 ? top.child - 1 : 0;
      for (std::uint32_t i = kdrop; i + 1 < node->count; ++i) keys[i] = keys[i + 1];
      --node->count;
      removed = true;
    } else {
      free_block(layout_, node);
      --node_count_;
    }
  }
  collapse_root(r);
}

// --- mutators -------------------------------------------------------------

bool Graph::insert_edge(VertexId src, VertexId dst, Weight w) {
  std::unique_lock lk(structure_mtx_);
  return insert_edge_impl(src, dst, w);
}

bool Graph::insert_edge_impl(VertexId src, VertexId dst, Weight w) {
  assert_not_in_visit();
  check_live(src);
  // dst is an opaque key here: records may dangle (deleted or not-yet-known
  // destinations) and scans above this layer filter through is_live().
  std::unique_lock vl(vertex_mtx_[src]);
  VertexRecord& r = table_[src];

  if (!r.traversal) {
    Block* chunk = alloc_block(layout_, BlockKind::kChunk, src);
    rec_set(layout_, chunk, 0, dst, w);
    chunk->count = 1;
    splice_first_block(src, chunk);
    r.traversal = r.query = r.tail = chunk;
    r.degree = 1;
    ++block_count_;
    ++edge_count_;
    return true;
  }

  if (r.level == 0) {
    Block* chunk = r.traversal;
    std::uint32_t pos = rec_lower_bound(layout_, chunk, dst);
    if (pos < chunk->count && rec_dst(layout_, chunk, pos) == dst) {
      rec_set_weight(layout_, chunk, pos, w);
      return false;
    }
    if (chunk->count < layout_.chunk_capacity) {
      rec_insert_at(layout_, chunk, pos, dst, w);
    } else {
      promote_with_pending(src, dst, w);
    }
    ++r.degree;
    ++edge_count_;
    return true;
  }

  std::vector<PathEntry> path;
  Block* leaf = descend(r, dst, path);
  std::uint32_t pos = rec_lower_bound(layout_, leaf, dst);
  if (pos < leaf->count && rec_dst(layout_, leaf, pos) == dst) {
    rec_set_weight(layout_, leaf, pos, w);
    return false;
  }
  if (leaf->count < layout_.leaf_capacity) {
    rec_insert_at(layout_, leaf, pos, dst, w);
  } else {
    split_leaf_insert(r, path, leaf, dst, w);
  }
  ++r.degree;
  ++edge_count_;
  return true;
}

bool Graph::delete_edge(VertexId src, VertexId dst) {
  std::unique_lock lk(structure_mtx_);
  return delete_edge_impl(src, dst);
}

bool Graph::delete_edge_impl(VertexId src, VertexId dst) {
  assert_not_in_visit();
  check_live(src);
  std::unique_lock vl(vertex_mtx_[src]);
  VertexRecord& r = table_[src];
  if (!r.traversal) return false;

  if (r.level == 0) {
    Block* chunk = r.traversal;
    std::uint32_t pos = rec_lower_bound(layout_, chunk, dst);
    if (pos >= chunk->count || rec_dst(layout_, chunk, pos) != dst) return false;
    rec_remove_at(layout_, chunk, pos);
    --r.degree;
    --edge_count_;
    return true;  // an emptied chunk stays allocated for reuse
  }

  std::vector<PathEntry> path;
  Block* leaf = descend(r, dst, path);
  std::uint32_t pos = rec_lower_bound(layout_, leaf, dst);
  if (pos >= leaf->count || rec_dst(layout_, leaf, pos) != dst) return false;
  rec_remove_at(layout_, leaf, pos);
  --r.degree;
  --edge_count_;
  // A drained leaf is spliced out unless it is the vertex's last one: trees
  // never demote back to chunks, so a one-leaf tree just keeps its leaf.
  if (leaf->count == 0 && r.level > 1) splice_leaf(src, r, path, leaf);
  return true;
}

bool Graph::update_edge_weight(VertexId src, VertexId dst, Weight w) {
  std::unique_lock lk(structure_mtx_);
  return update_edge_weight_impl(src, dst, w);
}

bool Graph::update_edge_weight_impl(VertexId src, VertexId dst, Weight w) {
  assert_not_in_visit();
  check_live(src);
  std::unique_lock vl(vertex_mtx_[src]);
  VertexRecord& r = table_[src];
  if (!r.traversal) return false;
  Block* b = r.traversal;
  if (r.level > 0) {
    std::vector<PathEntry> path;
    b = descend(r, dst, path);
  }
  std::uint32_t pos = rec_lower_bound(layout_, b, dst);
  if (pos >= b->count || rec_dst(layout_, b, pos) != dst) return false;
  rec_set_weight(layout_, b, pos, w);
  return true;
}

void Graph::delete_vertex(VertexId v) {
  std::unique_lock lk(structure_mtx_);
  delete_vertex_impl(v);
}

void Graph::delete_vertex_impl(VertexId v) {
  assert_not_in_visit();
  check_live(v);
  VertexRecord& r = table_[v];

  if (r.traversal) {
    repoint_chain_pred(v, r.traversal, r.tail->next);
    if (r.level > 0) free_tree_internals(r.query);
    std::uint32_t blocks = r.level == 0 ? 1 : r.level;
    Block* b = r.traversal;
    for (std::uint32_t i = 0; i < blocks; ++i) {
      Block* next = b->next;
      free_block(layout_, b);
      b = next;
    }
    block_count_ -= blocks;
    edge_count_ -= r.degree;
  }

  forward_.erase(external_[v]);
  r = VertexRecord{};
  r.deleted = true;
  --live_vertices_;
}

void Graph::free_tree_internals(Block* root) {
  if (!root || root->kind != BlockKind::kInternal) return;
  std::uint32_t nchild = std::uint32_t(root->count) + 1;
  Block** children = node_children(layout_, root);
  for (std::uint32_t i = 0; i < nchild; ++i) free_tree_internals(children[i]);
  free_block(layout_, root);
  --node_count_;
}

void Graph::update_vertex_prop(VertexId v, float p) {
  std::unique_lock lk(structure_mtx_);
  update_vertex_prop_impl(v, p);
}

void Graph::update_vertex_prop_impl(VertexId v, float p) {
  assert_not_in_visit();
  check_live(v);
  table_[v].prop = p;
}

// --- queries ----------------------------------------------------------------

std::optional<EdgeRecord> Graph::find_edge(VertexId src, VertexId dst) const {
  return find_edge_counted(src, dst, nullptr);
}

std::optional<EdgeRecord> Graph::find_edge_counted(VertexId src, VertexId dst,
                                                   std::uint32_t* probes) const {
  std::shared_lock lk(structure_mtx_);
  check_live(src);
  const VertexRecord& r = table_[src];
  std::uint32_t n_probes = 0;
  std::optional<EdgeRecord> out;
  const Block* b = r.query;  // == traversal for level 0
  if (b) {
    while (b->kind == BlockKind::kInternal) {
      ++n_probes;
      const VertexId* keys = node_keys(b);
      std::uint32_t c = 0;
      while (c < b->count && dst >= keys[c]) ++c;
      b = node_children(layout_, b)[c];
    }
    ++n_probes;
    std::uint32_t pos = rec_lower_bound(layout_, b, dst);
    if (pos < b->count && rec_dst(layout_, b, pos) == dst)
      out = EdgeRecord{dst, rec_weight(layout_, b, pos)};
  }
  if (probes) *probes = n_probes;
  return out;
}

std::vector<EdgeRecord> Graph::neighbors(VertexId v) const {
  std::shared_lock lk(structure_mtx_);
  check_live(v);
  std::vector<EdgeRecord> out;
  out.reserve(table_[v].degree);
  for_neighbors(v, [&](VertexId dst, Weight w) { out.push_back({dst, w}); });
  return out;
}

// --- audit --------------------------------------------------------------

namespace {
// Collect a tree's leaves left-to-right, checking equal depth as we go.
bool collect_leaves(const BlockLayout& lay, const Block* n, int depth,
                    int& leaf_depth, std::vector<const Block*>& out) {
  if (n->kind != BlockKind::kInternal) {
    if (leaf_depth < 0) leaf_depth = depth;
    if (depth != leaf_depth) return false;
    out.push_back(n);
    return true;
  }
  std::uint32_t nchild = std::uint32_t(n->count) + 1;
  Block* const* children = node_children(lay, n);
  for (std::uint32_t i = 0; i < nchild; ++i)
    if (!collect_leaves(lay, children[i], depth + 1, leaf_depth, out))
      return false;
  return true;
}
}  // namespace

AuditReport Graph::audit() const {
  std::shared_lock lk(structure_mtx_);
  AuditReport rep;
  rep.ordered = true;

  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.ordered = false;
    rep.message = std::move(msg);
    return rep;
  };

  std::size_t owners_with_blocks = 0;
  for (std::size_t v = 0; v < table_.size(); ++v)
    if (!table_[v].deleted && table_[v].traversal) ++owners_with_blocks;

  const Block* b = head_;
  VertexId prev_owner = kNoVertex;
  std::size_t owner_runs = 0;
  while (b) {
    VertexId v = b->owner;
    if (v >= table_.size() || table_[v].deleted)
      return fail("chain visits block of dead vertex " + std::to_string(v));
    if (prev_owner != kNoVertex && v <= prev_owner)
      return fail("chain owners not strictly ascending at vertex " +
                  std::to_string(v));
    prev_owner = v;
    ++owner_runs;

    const VertexRecord& r = table_[v];
    if (r.traversal != b)
      return fail("vertex " + std::to_string(v) +
                  " run does not start at its traversal link");
    std::uint32_t expect_blocks = r.level == 0 ? 1 : r.level;
    BlockKind expect_kind = r.level == 0 ? BlockKind::kChunk : BlockKind::kLeaf;

    std::vector<const Block*> run;
    VertexId prev_dst = 0;
    bool have_prev = false;
    std::size_t nrecords = 0;
    while (b && b->owner == v) {
      if (b->kind != expect_kind)
        return fail("vertex " + std::to_string(v) + " block kind mismatch");
      for (std::uint32_t i = 0; i < b->count; ++i) {
        VertexId d = rec_dst(layout_, b, i);
        if (have_prev && d <= prev_dst)
          return fail("records of vertex " + std::to_string(v) +
                      " not strictly ascending");
        prev_dst = d;
        have_prev = true;
      }
      nrecords += b->count;
      run.push_back(b);
      b = b->next;
    }
    if (run.size() != expect_blocks)
      return fail("vertex " + std::to_string(v) + " owns " +
                  std::to_string(run.size()) + " chain blocks, level implies " +
                  std::to_string(expect_blocks));
    if (r.tail != run.back())
      return fail("vertex " + std::to_string(v) + " cached tail is stale");
    if (nrecords != r.degree)
      return fail("vertex " + std::to_string(v) + " degree " +
                  std::to_string(r.degree) + " != chain records " +
                  std::to_string(nrecords));
    if (r.level == 0) {
      if (r.query != r.traversal)
        return fail("level-0 vertex " + std::to_string(v) +
                    " has query != traversal");
    } else {
      // The tree must enumerate exactly the chain run, leaves at equal depth.
      std::vector<const Block*> leaves;
      int leaf_depth = -1;
      if (!collect_leaves(layout_, r.query, 0, leaf_depth, leaves))
        return fail("vertex " + std::to_string(v) + " tree depths unequal");
      if (leaves.size() != run.size() ||
          !std::equal(leaves.begin(), leaves.end(), run.begin()))
        return fail("vertex " + std::to_string(v) +
                    " tree leaves disagree with its chain run");
    }
    rep.block_count += run.size();
    rep.edge_count += nrecords;
  }

  if (owner_runs != owners_with_blocks)
    return fail("chain covers " + std::to_string(owner_runs) +
                " owners, table says " + std::to_string(owners_with_blocks));
  if (rep.block_count != block_count_)
    return fail("chain blocks " + std::to_string(rep.block_count) +
                " != accounted " + std::to_string(block_count_));
  if (rep.edge_count != edge_count_)
    return fail("chain records " + std::to_string(rep.edge_count) +
                " != accounted " + std::to_string(edge_count_));
  rep.ok = true;
  return rep;
}

}  // namespace weft
