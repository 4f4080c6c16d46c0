// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "weft/batch.hpp"
#include "weft/graph.hpp"

namespace weft {

// Text edge lists: one "src dst [weight]" per line, whitespace separated,
// '#' starts a comment line, vertex tokens are arbitrary strings. Lines
// with a missing weight get one synthesized uniformly in [1, 100] from
// (weight_seed, src token, dst token), so reloads reproduce it exactly.

struct LoadOptions {
  bool shuffle = false;            // permute edge order before insertion
  std::uint64_t shuffle_seed = 0;
  std::uint64_t weight_seed = 1;
};

struct LoadStats {
  std::size_t lines = 0;       // physical lines read
  std::size_t comments = 0;    // comment/blank lines skipped
  std::size_t records = 0;     // fresh records inserted
  std::size_t upserts = 0;     // duplicate pairs that overwrote a weight
  std::size_t synthesized = 0; // edges that needed a generated weight
  std::size_t vertices = 0;    // live vertices after the load
  std::uint64_t wall_ns = 0;
};

// Platform-stable 64-bit token hash (std::hash varies per libstdc++ build).
std::uint64_t stable_token_hash(std::string_view s);

LoadStats load_edge_list(Graph& g, std::istream& in, const LoadOptions& opts);
LoadStats load_edge_list_file(Graph& g, const std::string& path,
                              const LoadOptions& opts);

// Synthetic update stream over dense vertex ids [0, vertices): roughly 60%
// edge inserts, 25% deletes, 15% weight rewrites, replayable from the seed.
std::vector<UpdateOp> make_update_stream(std::size_t ops, std::size_t vertices,
                                         std::uint64_t seed);

// Text update stream, one op per line over dense numeric ids:
//   + src dst weight   insert/upsert edge
//   - src dst          delete edge
//   = src dst weight   rewrite weight
// '#' comments and blank lines are skipped.
std::vector<UpdateOp> parse_update_stream(std::istream& in);
std::vector<UpdateOp> parse_update_stream_file(const std::string& path);

}  // namespace weft
