#include <numeric>
#include <vector>

#include "doctest.h"
#include "weft/access.hpp"
#include "weft/graph.hpp"
#include "weft/rng.hpp"
#include "weft/scheduler.hpp"

using namespace weft;

namespace {

// A task that wants to suspend k times, consulting the gate before each
// suspension exactly like a real block step does. work counts progress
// segments: a task with k suspension points performs k + 1 of them.
CoroTask yielder(ExecContext ctx, std::uint32_t k, std::uint64_t* work) {
  for (std::uint32_t i = 0; i < k; ++i) {
    ++*work;
    co_await YieldPoint{scheduler_allows_yield(ctx), ctx.counters};
  }
  ++*work;
}

CoroTask thrower(ExecContext ctx, std::uint32_t after) {
  for (std::uint32_t i = 0; i < after; ++i)
    co_await YieldPoint{scheduler_allows_yield(ctx), ctx.counters};
  throw InvalidArgument("boom");
}

struct Fixture {
  StrategyConfig cfg;
  Counters counters;
};

}  // namespace

TEST_CASE("polling resumes each task exactly suspensions plus one times") {
  Fixture f;
  std::uint64_t work = 0;

  // Three tasks, two suspensions each: 3 * (2 + 1) = 9 resumes.
  auto pool = build_pool(f.cfg, f.counters, SchedulerKind::kPolling, 3,
                         [&](std::size_t, ExecContext ctx) {
                           return yielder(ctx, 2, &work);
                         });
  auto st = run_pool(pool, f.counters);
  CHECK(st.resumes == 9);
  CHECK(work == 9);
  CHECK(pool.remain().load() == 0);

  // Mixed lengths: (0 + 1) + (3 + 1) = 5.
  work = 0;
  auto pool2 = build_pool(f.cfg, f.counters, SchedulerKind::kPolling, 2,
                          [&](std::size_t i, ExecContext ctx) {
                            return yielder(ctx, i == 0 ? 0 : 3, &work);
                          });
  auto st2 = run_pool(pool2, f.counters);
  CHECK(st2.resumes == 5);
  CHECK(work == 5);
}

TEST_CASE("polling does not trim a single task") {
  Fixture f;
  std::uint64_t work = 0;
  auto pool = build_pool(f.cfg, f.counters, SchedulerKind::kPolling, 1,
                         [&](std::size_t, ExecContext ctx) {
                           return yielder(ctx, 0, &work);
                         });
  auto st = run_pool(pool, f.counters);
  CHECK(st.resumes == 1);

  // With suspensions the lone polled task still yields every time.
  work = 0;
  auto pool2 = build_pool(f.cfg, f.counters, SchedulerKind::kPolling, 1,
                          [&](std::size_t, ExecContext ctx) {
                            return yielder(ctx, 4, &work);
                          });
  auto st2 = run_pool(pool2, f.counters);
  CHECK(st2.resumes == 5);
  CHECK(work == 5);
}

TEST_CASE("trimmed polling stops the last survivor from yielding") {
  Fixture f;
  std::uint64_t work = 0;

  // {k=5, k=0}: T0 suspends once, T1 finishes (pool drops to one task), then
  // T0's second resume runs straight through its remaining steps: 3 resumes.
  auto pool = build_pool(f.cfg, f.counters, SchedulerKind::kTrimmedPolling, 2,
                         [&](std::size_t i, ExecContext ctx) {
                           return yielder(ctx, i == 0 ? 5 : 0, &work);
                         });
  auto st = run_pool(pool, f.counters);
  CHECK(st.resumes == 3);
  CHECK(work == 7);  // all 6 + 1 progress segments still happen
  CHECK(pool.remain().load() == 0);

  // A single trimmed task never suspends at all.
  work = 0;
  auto pool2 = build_pool(f.cfg, f.counters, SchedulerKind::kTrimmedPolling, 1,
                          [&](std::size_t, ExecContext ctx) {
                            return yielder(ctx, 100, &work);
                          });
  auto st2 = run_pool(pool2, f.counters);
  CHECK(st2.resumes == 1);
  CHECK(work == 101);
}

TEST_CASE("empty pools are rejected") {
  Fixture f;
  CHECK_THROWS_AS(build_pool(f.cfg, f.counters, SchedulerKind::kPolling, 0,
                             [&](std::size_t, ExecContext) { return CoroTask(); }),
                  InvalidTaskCount);
}

TEST_CASE("task exceptions surface as TaskPanicked with the slot index") {
  Fixture f;
  std::uint64_t work = 0;
  for (auto kind : {SchedulerKind::kPolling, SchedulerKind::kTrimmedPolling}) {
    auto pool = build_pool(f.cfg, f.counters, kind, 3,
                           [&](std::size_t i, ExecContext ctx) {
                             return i == 1 ? thrower(ctx, 2)
                                           : yielder(ctx, 5, &work);
                           });
    try {
      run_pool(pool, f.counters);
      FAIL("expected TaskPanicked");
    } catch (const TaskPanicked& p) {
      CHECK(p.index == 1);
      CHECK(p.code() == ErrorCode::kTaskPanicked);
    }
  }
}

TEST_CASE("trimmed never needs more resumes than polling") {
  Fixture f;
  Rng rng(0x5eed);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t m = 1 + rng.below(8);
    std::vector<std::uint32_t> ks;
    for (std::size_t i = 0; i < m; ++i)
      ks.push_back(std::uint32_t(rng.below(12)));

    std::uint64_t work_p = 0, work_t = 0;
    auto pp = build_pool(f.cfg, f.counters, SchedulerKind::kPolling, m,
                         [&](std::size_t i, ExecContext ctx) {
                           return yielder(ctx, ks[i], &work_p);
                         });
    auto sp = run_pool(pp, f.counters);

    auto tp = build_pool(f.cfg, f.counters, SchedulerKind::kTrimmedPolling, m,
                         [&](std::size_t i, ExecContext ctx) {
                           return yielder(ctx, ks[i], &work_t);
                         });
    auto stt = run_pool(tp, f.counters);

    std::uint64_t total =
        std::accumulate(ks.begin(), ks.end(), std::uint64_t(m));
    CHECK(sp.resumes == total);  // polling is exact
    CHECK(work_p == total);
    CHECK(work_t == total);  // same work done either way
    CHECK(stt.resumes <= sp.resumes);
    CHECK(stt.resumes >= m);  // every task is resumed at least once
  }
}

TEST_CASE("schedulers drive real graph walks to identical results") {
  GraphConfig gc;
  gc.chunk_capacity_override = 4;
  gc.leaf_capacity_override = 4;
  gc.fanout_override = 4;
  Graph g(gc);
  std::vector<VertexId> ids;
  for (int i = 0; i < 16; ++i) ids.push_back(g.insert_vertex(std::to_string(i)));
  Rng rng(7);
  for (int e = 0; e < 400; ++e)
    g.insert_edge(ids[rng.below(16)], VertexId(rng.below(64)),
                  Weight(1 + rng.below(9)));
  REQUIRE(g.audit().ok);

  auto run = [&](SchedulerKind kind) {
    StrategyConfig cfg;
    cfg.strategy = Strategy::kAllSoft;
    Counters counters;
    std::vector<std::uint64_t> sums(ids.size(), 0);
    auto pool = build_pool(cfg, counters, kind, ids.size(),
                           [&](std::size_t i, ExecContext ctx) {
                             return get_neighbors_vertex(
                                 ctx, g, ids[i], [&sums, i](VertexId d, Weight) {
                                   sums[i] += d;
                                 });
                           });
    auto st = run_pool(pool, counters);
    return std::pair{sums, st.resumes};
  };

  auto [sums_p, resumes_p] = run(SchedulerKind::kPolling);
  auto [sums_t, resumes_t] = run(SchedulerKind::kTrimmedPolling);
  CHECK(sums_p == sums_t);
  CHECK(resumes_t <= resumes_p);

  std::vector<std::uint64_t> expect(ids.size(), 0);
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (auto& e : g.neighbors(ids[i])) expect[i] += e.dst;
  CHECK(sums_p == expect);
}
