// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#include "weft/probe.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <new>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "weft/counters.hpp"
#include "weft/rng.hpp"
#include "weft/scheduler.hpp"
#include "weft/task.hpp"

namespace weft {

namespace {

constexpr std::size_t kLineBytes = 64;
constexpr std::size_t kSlotWords = kLineBytes / sizeof(std::uint64_t);
constexpr std::size_t kMinWorkingSet = std::size_t(1) << 20;
constexpr std::size_t kMaxWorkingSet = std::size_t(128) << 20;

// Keep a chased value alive without a store the optimizer could sink.
inline void consume(std::uint64_t v) { asm volatile("" : : "r"(v) : "memory"); }

double now_ns() {
  return double(std::chrono::duration_cast<std::chrono::nanoseconds>(
                    std::chrono::steady_clock::now().time_since_epoch())
                    .count());
}

// One cache line per slot; slot i holds the index of its successor.
struct ChaseField {
  std::vector<std::uint64_t> words;
  std::size_t slots = 0;

  explicit ChaseField(std::size_t bytes) {
    slots = std::max<std::size_t>(bytes / kLineBytes, 16);
    try {
      words.assign(slots * kSlotWords, 0);
    } catch (const std::bad_alloc&) {
      throw InsufficientMemory("probe working set of " +
                               std::to_string(bytes) + " bytes");
    } catch (const std::length_error&) {
      throw InsufficientMemory("probe working set of " +
                               std::to_string(bytes) + " bytes");
    }
  }

  std::uint64_t& slot(std::size_t i) { return words[i * kSlotWords]; }
  const std::uint64_t* addr(std::size_t i) const {
    return words.data() + i * kSlotWords;
  }

  // Single random cycle over [lo, hi) so a walk of (hi - lo) steps touches
  // every slot exactly once; writing it also faults the pages in.
  void link_random(std::size_t lo, std::size_t hi, std::uint64_t seed) {
    std::vector<std::uint32_t> order(hi - lo);
    for (std::size_t i = 0; i < order.size(); ++i)
      order[i] = std::uint32_t(lo + i);
    seeded_shuffle(order, seed);
    for (std::size_t i = 0; i < order.size(); ++i)
      slot(order[i]) = order[(i + 1) % order.size()];
  }

  // Fixed forward stride (in slots), wrapping. stride 1 is a dense array
  // walk; stride 4 hops block-sized gaps in allocation order.
  void link_strided(std::size_t stride) {
    for (std::size_t i = 0; i < slots; ++i) slot(i) = (i + stride) % slots;
  }
};

// Dependent-load walk; returns ns per step.
double time_chase(const ChaseField& f, std::size_t start, std::size_t steps) {
  std::uint64_t cur = start;
  double t0 = now_ns();
  for (std::size_t i = 0; i < steps; ++i) cur = *f.addr(std::size_t(cur));
  double t1 = now_ns();
  consume(cur);
  return (t1 - t0) / double(steps);
}

CoroTask yield_n(std::size_t pairs) {
  for (std::size_t i = 0; i < pairs; ++i) co_await std::suspend_always{};
}

// ns per suspend/resume pair.
double time_switch() {
  constexpr std::size_t kPairs = 200000;
  CoroTask t = yield_n(kPairs);
  t.resume();  // run to the first suspension
  double t0 = now_ns();
  for (std::size_t i = 0; i < kPairs; ++i) t.resume();
  double t1 = now_ns();
  return (t1 - t0) / double(kPairs);
}

// The walk the sweep times: the real gate (prefetch then yield) in front of
// every dependent load.
CoroTask chase_task(ExecContext ctx, const ChaseField* f, std::uint64_t start,
                    std::size_t steps) {
  ctx.counters->tasks_run.fetch_add(1, std::memory_order_relaxed);
  std::uint64_t cur = start;
  for (std::size_t i = 0; i < steps; ++i) {
    co_await block_step(ctx, f->addr(std::size_t(cur)), kLineBytes,
                        BlockKind::kLeaf, 0);
    cur = *f->addr(std::size_t(cur));
  }
  consume(cur);
}

double time_sweep_point(ChaseField& f, std::uint32_t m, std::uint64_t seed) {
  std::size_t per = f.slots / m;
  if (per < 4) return -1.0;  // grid point larger than the field; skip
  std::vector<std::size_t> starts;
  for (std::uint32_t i = 0; i < m; ++i) {
    std::size_t lo = i * per, hi = (i + 1 == m) ? f.slots : lo + per;
    f.link_random(lo, hi, mix64(seed ^ i));
    starts.push_back(lo);
  }
  StrategyConfig cfg;
  cfg.strategy = Strategy::kAllSoft;
  cfg.coroutines = m;
  Counters counters;
  std::size_t total = 0;
  double t0 = now_ns();
  auto pool = build_pool(cfg, counters, SchedulerKind::kPolling, m,
                         [&](std::size_t i, ExecContext ctx) {
                           std::size_t lo = i * per;
                           std::size_t hi = (i + 1 == m) ? f.slots : lo + per;
                           return chase_task(ctx, &f, starts[i], hi - lo);
                         });
  run_pool(pool, counters);
  double t1 = now_ns();
  total = f.slots;
  return (t1 - t0) / double(total);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

std::size_t detect_llc_bytes() {
#ifdef _SC_LEVEL3_CACHE_SIZE
  long l3 = sysconf(_SC_LEVEL3_CACHE_SIZE);
  if (l3 > 0) return std::size_t(l3);
#endif
#ifdef _SC_LEVEL2_CACHE_SIZE
  long l2 = sysconf(_SC_LEVEL2_CACHE_SIZE);
  if (l2 > 0) return std::size_t(l2);
#endif
  return std::size_t(32) << 20;
}

ProbeResult probe_config(const ProbeOptions& opts) {
  if (opts.m_grid.empty()) throw InvalidArgument("probe needs a task grid");
  if (opts.trials == 0) throw InvalidArgument("probe needs at least one trial");
  for (std::uint32_t m : opts.m_grid)
    if (m == 0) throw InvalidArgument("task counts must be >= 1");

  ProbeResult out;
  // The detected default is clamped to keep the probe affordable; an
  // explicit size is an operator override and taken at face value.
  std::size_t ws = opts.working_set_bytes
                       ? opts.working_set_bytes
                       : std::clamp(4 * detect_llc_bytes(), kMinWorkingSet,
                                    kMaxWorkingSet);
  out.working_set_bytes = ws;

  ChaseField f(ws);
  std::size_t steps = f.slots;

  // Miss cost and the random (no usable stride) extreme.
  f.link_random(0, f.slots, opts.seed);
  double lat_rand = time_chase(f, 0, steps);
  f.link_random(0, f.slots, mix64(opts.seed ^ 0x7ee));
  double lat_tree = time_chase(f, 0, steps);

  f.link_strided(1);
  double lat_seq = time_chase(f, 0, steps);
  f.link_strided(4);
  double lat_chain = time_chase(f, 0, steps);

  out.cost.miss_ns = lat_rand;
  out.cost.task_switch_ns = time_switch();

  double lat_min = std::min({lat_seq, lat_chain, lat_tree, lat_rand});
  double span = lat_rand - lat_min;
  auto hit_prob = [&](double lat) {
    if (span <= 0.0) return 0.0;
    return std::clamp((lat_rand - lat) / span, 0.0, 1.0);
  };
  out.cost.hit_prob_sequential = hit_prob(lat_seq);
  out.cost.hit_prob_chained = hit_prob(lat_chain);
  out.cost.hit_prob_tree = hit_prob(lat_tree);

  // Sweep the real prefetch-and-yield walk over the task grid.
  double best = 0.0;
  bool have_best = false;
  for (std::uint32_t m : opts.m_grid) {
    std::vector<double> runs;
    for (std::uint32_t t = 0; t < opts.trials; ++t) {
      double ns = time_sweep_point(f, m, mix64(opts.seed ^ (m * 131u + t)));
      if (ns >= 0.0) runs.push_back(ns);
    }
    if (runs.empty()) continue;
    double med = median(runs);
    out.sweep.emplace_back(m, med);
    if (!have_best || med < best) {
      best = med;
      out.recommended_m = m;
      have_best = true;
    }
  }
  if (!have_best) throw InvalidArgument("probe grid has no feasible point");
  return out;
}

StrategyConfig tune(TaskClass cls, const ProbeResult& probe) {
  StrategyConfig cfg;
  cfg.coroutines = std::max<std::uint32_t>(probe.recommended_m, 1);
  const CostModelParams& c = probe.cost;
  bool seq = software_pays_off(c.miss_ns, c.hit_prob_sequential, c.task_switch_ns);
  bool chain = software_pays_off(c.miss_ns, c.hit_prob_chained, c.task_switch_ns);
  bool tree = software_pays_off(c.miss_ns, c.hit_prob_tree, c.task_switch_ns);

  switch (cls) {
    case TaskClass::kFullScan:
    case TaskClass::kFrontier:
      cfg.partitioner =
          cls == TaskClass::kFullScan ? Partitioner::kChain
                                      : Partitioner::kVertexRange;
      cfg.scheduler = cls == TaskClass::kFullScan
                          ? SchedulerKind::kPolling
                          : SchedulerKind::kTrimmedPolling;
      // Steady-state chain walks covered by hardware still miss on each
      // run's cold front, which behaves like a pointer hop: keep a soft
      // prefix while that pays, drop to hard when nothing does.
      cfg.strategy = chain ? Strategy::kAllSoft
                           : (tree ? Strategy::kHybridHotness
                                   : Strategy::kAllHard);
      break;
    case TaskClass::kPointQuery:
    case TaskClass::kBatchUpdate:
      cfg.partitioner = Partitioner::kVertexRange;
      cfg.scheduler = SchedulerKind::kTrimmedPolling;
      // Descents live or die on tree-hop cost; chunk reads are the part
      // hardware may already cover, so they are what Hybrid drops first.
      cfg.strategy = tree ? (seq ? Strategy::kAllSoft
                                 : Strategy::kHybridBlockSize)
                          : Strategy::kAllHard;
      break;
  }
  return cfg;
}

std::string_view task_class_name(TaskClass cls) {
  switch (cls) {
    case TaskClass::kFullScan: return "full-scan";
    case TaskClass::kFrontier: return "frontier";
    case TaskClass::kPointQuery: return "point-query";
    case TaskClass::kBatchUpdate: return "batch-update";
  }
  return "full-scan";
}

TaskClass parse_task_class(std::string_view s) {
  if (s == "full-scan") return TaskClass::kFullScan;
  if (s == "frontier") return TaskClass::kFrontier;
  if (s == "point-query") return TaskClass::kPointQuery;
  if (s == "batch-update") return TaskClass::kBatchUpdate;
  throw InvalidArgument("unknown task class: " + std::string(s));
}

std::string probe_to_json(const ProbeResult& r) {
  nlohmann::json j;
  j["recommended_m"] = r.recommended_m;
  j["working_set_bytes"] = r.working_set_bytes;
  j["miss_ns"] = r.cost.miss_ns;
  j["task_switch_ns"] = r.cost.task_switch_ns;
  j["hit_prob"] = {{"sequential", r.cost.hit_prob_sequential},
                   {"chained", r.cost.hit_prob_chained},
                   {"tree", r.cost.hit_prob_tree}};
  nlohmann::json sweep = nlohmann::json::array();
  for (auto& [m, ns] : r.sweep) sweep.push_back({{"m", m}, {"ns_per_step", ns}});
  j["sweep"] = sweep;
  return j.dump(2);
}

ProbeResult probe_from_json(const std::string& text) {
  try {
    nlohmann::json j = nlohmann::json::parse(text);
    ProbeResult r;
    r.recommended_m = j.at("recommended_m").get<std::uint32_t>();
    r.working_set_bytes = j.at("working_set_bytes").get<std::size_t>();
    r.cost.miss_ns = j.at("miss_ns").get<double>();
    r.cost.task_switch_ns = j.at("task_switch_ns").get<double>();
    const auto& hp = j.at("hit_prob");
    r.cost.hit_prob_sequential = hp.at("sequential").get<double>();
    r.cost.hit_prob_chained = hp.at("chained").get<double>();
    r.cost.hit_prob_tree = hp.at("tree").get<double>();
    for (const auto& row : j.at("sweep"))
      r.sweep.emplace_back(row.at("m").get<std::uint32_t>(),
                           row.at("ns_per_step").get<double>());
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed probe result: ") + e.what());
  }
}

}  // namespace weft
