// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#include "weft/loader.hpp"

#include <cctype>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>

#include "weft/rng.hpp"

namespace weft {

namespace {

struct PendingEdge {
  std::string src, dst;
  Weight w = 0.0f;
  bool synthesized = false;
};

std::uint64_t now_ns() {
  return std::uint64_t(std::chrono::duration_cast<std::chrono::nanoseconds>(
                           std::chrono::steady_clock::now().time_since_epoch())
                           .count());
}

// Whitespace tokenizer; returns false for comment/blank lines.
bool split_line(const std::string& line, std::vector<std::string>& out) {
  out.clear();
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(std::uint8_t(line[i]))) ++i;
    if (i >= line.size()) break;
    if (out.empty() && line[i] == '#') return false;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(std::uint8_t(line[j]))) ++j;
    out.emplace_back(line, i, j - i);
    i = j;
  }
  return !out.empty();
}

double parse_weight(const std::string& tok, std::size_t line_no) {
  errno = 0;
  char* end = nullptr;
  double w = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size() || errno != 0 || !std::isfinite(w))
    throw ParseError(line_no, "bad weight '" + tok + "'");
  return w;
}

VertexId intern(Graph& g, const std::string& token) {
  VertexId v = g.lookup(token);
  return v != kNoVertex ? v : g.insert_vertex(token);
}

std::uint64_t parse_id(const std::string& tok, std::size_t line_no) {
  errno = 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
  if (end != tok.c_str() + tok.size() || errno != 0 || tok.empty())
    throw ParseError(line_no, "bad vertex id '" + tok + "'");
  return v;
}

}  // namespace

std::uint64_t stable_token_hash(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a, then a finishing mix
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return mix64(h);
}

LoadStats load_edge_list(Graph& g, std::istream& in, const LoadOptions& opts) {
  LoadStats stats;
  std::uint64_t t0 = now_ns();

  std::vector<PendingEdge> edges;
  std::vector<std::string> toks;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    ++stats.lines;
    if (!split_line(line, toks)) {
      ++stats.comments;
      continue;
    }
    if (toks.size() < 2 || toks.size() > 3)
      throw ParseError(line_no, "expected 'src dst [weight]', got " +
                               std::to_string(toks.size()) + " fields");
    PendingEdge e;
    e.src = std::move(toks[0]);
    e.dst = std::move(toks[1]);
    if (toks.size() == 3) {
      double w = parse_weight(toks[2], line_no);
      if (w < 0.0) throw NegativeWeight(line_no, w);
      e.w = Weight(w);
    } else {
      // Asymmetric combine so (a,b) and (b,a) draw independent weights.
      std::uint64_t h = mix64(opts.weight_seed ^ stable_token_hash(e.src) ^
                              stable_token_hash(e.dst) * 0x9e3779b97f4a7c15ull);
      e.w = Weight(1 + h % 100);
      e.synthesized = true;
    }
    edges.push_back(std::move(e));
  }

  if (opts.shuffle) seeded_shuffle(edges, opts.shuffle_seed);

  for (const PendingEdge& e : edges) {
    VertexId s = intern(g, e.src);
    VertexId d = intern(g, e.dst);
    if (g.insert_edge(s, d, e.w))
      ++stats.records;
    else
      ++stats.upserts;
    if (e.synthesized) ++stats.synthesized;
  }
  stats.vertices = g.live_vertices();
  stats.wall_ns = now_ns() - t0;
  return stats;
}

LoadStats load_edge_list_file(Graph& g, const std::string& path,
                              const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list: " + path);
  return load_edge_list(g, in, opts);
}

std::vector<UpdateOp> make_update_stream(std::size_t ops, std::size_t vertices,
                                         std::uint64_t seed) {
  if (vertices == 0) throw InvalidArgument("stream needs a vertex pool");
  Rng rng(seed);
  std::vector<UpdateOp> out;
  out.reserve(ops);
  for (std::size_t i = 0; i < ops; ++i) {
    VertexId s = VertexId(rng.below(vertices));
    VertexId d = VertexId(rng.below(vertices));
    std::uint64_t roll = rng.below(100);
    if (roll < 60)
      out.push_back(UpdateOp::insert_edge(s, d, Weight(rng.range(1, 100))));
    else if (roll < 85)
      out.push_back(UpdateOp::delete_edge(s, d));
    else
      out.push_back(
          UpdateOp::update_edge_weight(s, d, Weight(rng.range(1, 100))));
  }
  return out;
}

std::vector<UpdateOp> parse_update_stream(std::istream& in) {
  std::vector<UpdateOp> out;
  std::vector<std::string> toks;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!split_line(line, toks)) continue;
    const std::string& op = toks[0];
    auto need = [&](std::size_t n) {
      if (toks.size() != n)
        throw ParseError(line_no, "op '" + op + "' takes " +
                                 std::to_string(n - 1) + " fields");
    };
    if (op == "+" || op == "=") {
      need(4);
      double w = parse_weight(toks[3], line_no);
      if (w < 0.0) throw NegativeWeight(line_no, w);
      VertexId s = VertexId(parse_id(toks[1], line_no));
      VertexId d = VertexId(parse_id(toks[2], line_no));
      out.push_back(op == "+" ? UpdateOp::insert_edge(s, d, Weight(w))
                              : UpdateOp::update_edge_weight(s, d, Weight(w)));
    } else if (op == "-") {
      need(3);
      out.push_back(
          UpdateOp::delete_edge(VertexId(parse_id(toks[1], line_no)),
                                VertexId(parse_id(toks[2], line_no))));
    } else {
      throw ParseError(line_no, "unknown op '" + op + "'");
    }
  }
  return out;
}

std::vector<UpdateOp> parse_update_stream_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open update stream: " + path);
  return parse_update_stream(in);
}

}  // namespace weft
