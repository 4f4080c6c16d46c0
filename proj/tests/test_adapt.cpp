#include <algorithm>
#include <vector>

#include "doctest.h"
#include "weft/probe.hpp"
#include "weft/rng.hpp"
#include "weft/strategy.hpp"

using namespace weft;

namespace {

ProbeResult make_probe(double miss, double sw, double p_seq, double p_chain,
                       double p_tree, std::uint32_t m = 8) {
  ProbeResult r;
  r.recommended_m = m;
  r.cost.miss_ns = miss;
  r.cost.task_switch_ns = sw;
  r.cost.hit_prob_sequential = p_seq;
  r.cost.hit_prob_chained = p_chain;
  r.cost.hit_prob_tree = p_tree;
  r.working_set_bytes = 1 << 20;
  r.sweep = {{m, 50.0}};
  return r;
}

// Softness rank within one task class: 2 all-soft, 1 either hybrid, 0 hard.
int softness(Strategy s) {
  switch (s) {
    case Strategy::kAllSoft: return 2;
    case Strategy::kHybridBlockSize:
    case Strategy::kHybridHotness: return 1;
    case Strategy::kAllHard: return 0;
  }
  return 0;
}

}  // namespace

TEST_CASE("gate stays pure under random inputs") {
  Rng rng(9);
  for (int i = 0; i < 2000; ++i) {
    auto s = Strategy(rng.below(4));
    auto k = BlockKind(rng.below(3));
    auto idx = std::uint32_t(rng.below(64));
    auto prefix = std::uint32_t(rng.below(16));
    auto a = prefetch_gate(s, k, idx, prefix);
    auto b = prefetch_gate(s, k, idx, prefix);
    CHECK(a.hint == b.hint);
    CHECK(a.yield == b.yield);
    CHECK(a.hint == a.yield);  // the gate never hints without yielding
  }
}

TEST_CASE("prefetch pays exactly when saved misses beat the switch") {
  CHECK(software_pays_off(100.0, 0.0, 20.0));
  CHECK_FALSE(software_pays_off(100.0, 0.9, 20.0));   // 10 < 20
  CHECK(software_pays_off(80.0, 0.75, 20.0));         // 20 >= 20, boundary
  CHECK_FALSE(software_pays_off(10.0, 0.0, 20.0));    // switch dearer than miss
}

TEST_CASE("raising any hit probability never makes the choice softer") {
  Rng rng(0xADA);
  for (int trial = 0; trial < 4000; ++trial) {
    double miss = 20.0 + double(rng.below(300));
    double sw = 1.0 + double(rng.below(100));
    double p[3] = {rng.unit(), rng.unit(), rng.unit()};
    auto cls = TaskClass(rng.below(4));
    auto base = tune(cls, make_probe(miss, sw, p[0], p[1], p[2]));

    int which = int(rng.below(3));
    double raised[3] = {p[0], p[1], p[2]};
    raised[which] = raised[which] + (1.0 - raised[which]) * rng.unit();
    auto bumped =
        tune(cls, make_probe(miss, sw, raised[0], raised[1], raised[2]));

    CHECK(softness(bumped.strategy) <= softness(base.strategy));
    // The pairing half of the config never budges with the cost inputs.
    CHECK(bumped.partitioner == base.partitioner);
    CHECK(bumped.scheduler == base.scheduler);
  }
}

TEST_CASE("task classes map to their partition and scheduler pairings") {
  auto probe = make_probe(100.0, 20.0, 0.0, 0.0, 0.0, 16);

  auto scan = tune(TaskClass::kFullScan, probe);
  CHECK(scan.partitioner == Partitioner::kChain);
  CHECK(scan.scheduler == SchedulerKind::kPolling);
  CHECK(scan.coroutines == 16);

  auto frontier = tune(TaskClass::kFrontier, probe);
  CHECK(frontier.partitioner == Partitioner::kVertexRange);
  CHECK(frontier.scheduler == SchedulerKind::kTrimmedPolling);

  auto query = tune(TaskClass::kPointQuery, probe);
  CHECK(query.partitioner == Partitioner::kVertexRange);
  CHECK(query.scheduler == SchedulerKind::kTrimmedPolling);

  auto batch = tune(TaskClass::kBatchUpdate, probe);
  CHECK(batch.scheduler == SchedulerKind::kTrimmedPolling);
}

TEST_CASE("cost rule picks the strategy per dominant layout") {
  // Nothing covered by hardware: everything soft.
  CHECK(tune(TaskClass::kPointQuery, make_probe(100, 20, 0, 0, 0)).strategy ==
        Strategy::kAllSoft);
  CHECK(tune(TaskClass::kFullScan, make_probe(100, 20, 0, 0, 0)).strategy ==
        Strategy::kAllSoft);

  // Hardware covers tree hops: lookups stop paying for any prefetch.
  CHECK(tune(TaskClass::kPointQuery, make_probe(100, 20, 0, 0, 0.95)).strategy ==
        Strategy::kAllHard);
  CHECK(tune(TaskClass::kBatchUpdate, make_probe(100, 20, 0, 0, 0.95)).strategy ==
        Strategy::kAllHard);

  // Hardware covers dense chunk reads but not tree hops: skip the chunks.
  CHECK(tune(TaskClass::kPointQuery, make_probe(100, 20, 0.95, 0, 0)).strategy ==
        Strategy::kHybridBlockSize);

  // Hardware streams the chain but misses cold fronts: soft prefix only.
  CHECK(tune(TaskClass::kFullScan, make_probe(100, 20, 0, 0.95, 0)).strategy ==
        Strategy::kHybridHotness);
  CHECK(tune(TaskClass::kFrontier, make_probe(100, 20, 0, 0.95, 0)).strategy ==
        Strategy::kHybridHotness);

  // Hardware covers everything: hard across the board.
  CHECK(tune(TaskClass::kFullScan, make_probe(100, 20, 0.95, 0.95, 0.95)).strategy ==
        Strategy::kAllHard);
}

TEST_CASE("probe measures a tiny working set end to end") {
  ProbeOptions opts;
  opts.working_set_bytes = 1 << 20;
  opts.m_grid = {1, 2, 4};
  opts.trials = 1;
  opts.seed = 7;
  auto r = probe_config(opts);

  CHECK(r.working_set_bytes == (1 << 20));
  CHECK(r.cost.miss_ns > 0.0);
  CHECK(r.cost.task_switch_ns > 0.0);
  for (double p : {r.cost.hit_prob_sequential, r.cost.hit_prob_chained,
                   r.cost.hit_prob_tree}) {
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
  CHECK(std::count(opts.m_grid.begin(), opts.m_grid.end(), r.recommended_m) == 1);
  CHECK(r.sweep.size() == opts.m_grid.size());
  for (auto& [m, ns] : r.sweep) CHECK(ns > 0.0);
}

TEST_CASE("probe results survive a serialization round trip") {
  auto r = make_probe(123.5, 17.25, 0.75, 0.5, 0.125, 4);
  r.sweep = {{1, 200.0}, {4, 90.5}, {16, 110.0}};
  auto back = probe_from_json(probe_to_json(r));
  CHECK(back.recommended_m == r.recommended_m);
  CHECK(back.working_set_bytes == r.working_set_bytes);
  CHECK(back.cost.miss_ns == r.cost.miss_ns);
  CHECK(back.cost.task_switch_ns == r.cost.task_switch_ns);
  CHECK(back.cost.hit_prob_sequential == r.cost.hit_prob_sequential);
  CHECK(back.cost.hit_prob_chained == r.cost.hit_prob_chained);
  CHECK(back.cost.hit_prob_tree == r.cost.hit_prob_tree);
  REQUIRE(back.sweep.size() == r.sweep.size());
  for (std::size_t i = 0; i < r.sweep.size(); ++i) {
    CHECK(back.sweep[i].first == r.sweep[i].first);
    CHECK(back.sweep[i].second == r.sweep[i].second);
  }

  CHECK_THROWS_AS(probe_from_json("{ not json"), InvalidArgument);
  CHECK_THROWS_AS(probe_from_json("{\"recommended_m\": 2}"), InvalidArgument);
}

TEST_CASE("probe rejects bad grids and impossible working sets") {
  ProbeOptions opts;
  opts.m_grid = {};
  CHECK_THROWS_AS(probe_config(opts), InvalidArgument);
  opts.m_grid = {0};
  CHECK_THROWS_AS(probe_config(opts), InvalidArgument);
  opts.m_grid = {1};
  opts.trials = 0;
  CHECK_THROWS_AS(probe_config(opts), InvalidArgument);

  opts.trials = 1;
  opts.working_set_bytes = std::size_t(1) << 62;  // nothing can grant this
  CHECK_THROWS_AS(probe_config(opts), InsufficientMemory);
}

TEST_CASE("task class names parse back to themselves") {
  for (auto cls : {TaskClass::kFullScan, TaskClass::kFrontier,
                   TaskClass::kPointQuery, TaskClass::kBatchUpdate})
    CHECK(parse_task_class(task_class_name(cls)) == cls);
  CHECK_THROWS_AS(parse_task_class("sideways"), InvalidArgument);
}
