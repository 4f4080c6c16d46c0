// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "weft/block.hpp"
#include "weft/types.hpp"

namespace weft {

// Per-block-access prefetch policy. "Hard" lets the hardware take the miss;
// "soft" issues a software prefetch and suspends the coroutine so siblings
// run while the lines arrive.
enum class Strategy : std::uint8_t {
  kAllHard = 0,        // never hint, never yield
  kAllSoft = 1,        // hint + yield on every block step
  kHybridBlockSize = 2,  // chunks hard (one-shot blocks), tree blocks soft
  kHybridHotness = 3,    // leading blocks of each run soft, cold tail hard
};

enum class Partitioner : std::uint8_t { kChain = 0, kVertexRange = 1 };
enum class SchedulerKind : std::uint8_t { kPolling = 0, kTrimmedPolling = 1 };

struct GateDecision {
  bool hint = false;
  bool yield = false;
};

// Pure gate: same inputs, same answer. The scheduler may still veto the
// yield (a lone surviving task has nobody to hide latency behind); it never
// adds one, and the hint is emitted regardless of that veto.
constexpr GateDecision prefetch_gate(Strategy s, BlockKind kind,
                                     std::uint32_t chain_index,
                                     std::uint32_t hot_prefix) {
  switch (s) {
    case Strategy::kAllHard:
      return {false, false};
    case Strategy::kAllSoft:
      return {true, true};
    case Strategy::kHybridBlockSize:
      return kind == BlockKind::kChunk ? GateDecision{false, false}
                                       : GateDecision{true, true};
    case Strategy::kHybridHotness:
      return chain_index < hot_prefix ? GateDecision{true, true}
                                      : GateDecision{false, false};
  }
  return {false, false};
}

struct StrategyConfig {
  Strategy strategy = Strategy::kAllSoft;
  std::uint32_t coroutines = 8;  // live tasks per worker thread
  Partitioner partitioner = Partitioner::kChain;
  SchedulerKind scheduler = SchedulerKind::kPolling;
  // Fraction of live vertices above which a frontier counts as dense and the
  // round runs as a full chain scan instead of per-vertex tasks.
  double dense_threshold = 0.05;
  // kHybridHotness: block steps with run index below this stay soft.
  std::uint32_t hot_prefix = 4;
};

inline std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kAllHard: return "all-hard";
    case Strategy::kAllSoft: return "all-soft";
    case Strategy::kHybridBlockSize: return "hybrid-block-size";
    case Strategy::kHybridHotness: return "hybrid-hotness";
  }
  return "?";
}

inline Strategy parse_strategy(std::string_view s) {
  if (s == "all-hard") return Strategy::kAllHard;
  if (s == "all-soft") return Strategy::kAllSoft;
  if (s == "hybrid-block-size") return Strategy::kHybridBlockSize;
  if (s == "hybrid-hotness") return Strategy::kHybridHotness;
  throw InvalidArgument("unknown strategy: " + std::string(s));
}

inline std::string_view partitioner_name(Partitioner p) {
  return p == Partitioner::kChain ? "chain" : "vertex-range";
}

inline Partitioner parse_partitioner(std::string_view s) {
  if (s == "chain") return Partitioner::kChain;
  if (s == "vertex-range") return Partitioner::kVertexRange;
  throw InvalidArgument("unknown partitioner: " + std::string(s));
}

inline std::string_view scheduler_name(SchedulerKind k) {
  return k == SchedulerKind::kPolling ? "polling" : "trimmed-polling";
}

inline SchedulerKind parse_scheduler(std::string_view s) {
  if (s == "polling") return SchedulerKind::kPolling;
  if (s == "trimmed-polling") return SchedulerKind::kTrimmedPolling;
  throw InvalidArgument("unknown scheduler: " + std::string(s));
}

}  // namespace weft
