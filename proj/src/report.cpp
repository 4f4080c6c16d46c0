// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#include "weft/report.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "weft/types.hpp"

namespace weft {

namespace {

using nlohmann::json;

json counters_to_json(const CounterSnapshot& c) {
  return json{{"hints", c.hints},
              {"yields", c.yields},
              {"resumes", c.resumes},
              {"blocks_visited", c.blocks_visited},
              {"records_visited", c.records_visited},
              {"node_visits", c.node_visits},
              {"tasks_run", c.tasks_run}};
}

CounterSnapshot counters_from_json(const json& j) {
  CounterSnapshot c;
  c.hints = j.at("hints").get<std::uint64_t>();
  c.yields = j.at("yields").get<std::uint64_t>();
  c.resumes = j.at("resumes").get<std::uint64_t>();
  c.blocks_visited = j.at("blocks_visited").get<std::uint64_t>();
  c.records_visited = j.at("records_visited").get<std::uint64_t>();
  c.node_visits = j.at("node_visits").get<std::uint64_t>();
  c.tasks_run = j.at("tasks_run").get<std::uint64_t>();
  return c;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

std::string iso8601_utc_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string report_to_json(const RunReport& r) {
  json j{{"workload", r.workload},
         {"dataset", r.dataset},
         {"strategy", std::string(strategy_name(r.config.strategy))},
         {"partitioner", std::string(partitioner_name(r.config.partitioner))},
         {"scheduler", std::string(scheduler_name(r.config.scheduler))},
         {"coroutines", r.config.coroutines},
         {"dense_threshold", r.config.dense_threshold},
         {"hot_prefix", r.config.hot_prefix},
         {"threads", r.threads},
         {"batch_size", r.batch_size},
         {"wall_ns", r.wall_ns},
         {"throughput", r.throughput},
         {"counters", counters_to_json(r.counters)},
         {"timestamp", r.timestamp},
         {"status", r.status},
         {"error", r.error},
         {"result_digest", r.result_digest},
         {"checksum", r.checksum},
         {"batches", r.batches},
         {"failed_ops", r.failed_ops},
         {"best", r.best}};
  json hw{{"available", r.hw.available}, {"note", r.hw.note}};
  if (r.hw.available) {
    hw["cache_references"] = r.hw.cache_references;
    hw["cache_misses"] = r.hw.cache_misses;
  }
  j["hw"] = std::move(hw);
  return j.dump();
}

RunReport report_from_json(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
    RunReport r;
    r.workload = j.at("workload").get<std::string>();
    r.dataset = j.at("dataset").get<std::string>();
    r.config.strategy = parse_strategy(j.at("strategy").get<std::string>());
    r.config.partitioner =
        parse_partitioner(j.at("partitioner").get<std::string>());
    r.config.scheduler = parse_scheduler(j.at("scheduler").get<std::string>());
    r.config.coroutines = j.at("coroutines").get<std::uint32_t>();
    r.config.dense_threshold = j.at("dense_threshold").get<double>();
    r.config.hot_prefix = j.at("hot_prefix").get<std::uint32_t>();
    r.threads = j.at("threads").get<std::uint32_t>();
    r.batch_size = j.at("batch_size").get<std::size_t>();
    r.wall_ns = j.at("wall_ns").get<std::uint64_t>();
    r.throughput = j.at("throughput").get<double>();
    r.counters = counters_from_json(j.at("counters"));
    const json& hw = j.at("hw");
    r.hw.available = hw.at("available").get<bool>();
    r.hw.note = hw.at("note").get<std::string>();
    if (r.hw.available) {
      r.hw.cache_references = hw.at("cache_references").get<std::uint64_t>();
      r.hw.cache_misses = hw.at("cache_misses").get<std::uint64_t>();
    }
    r.timestamp = j.at("timestamp").get<std::string>();
    r.status = j.at("status").get<std::string>();
    r.error = j.at("error").get<std::string>();
    r.result_digest = j.at("result_digest").get<std::uint64_t>();
    r.checksum = j.at("checksum").get<std::uint64_t>();
    r.batches = j.at("batches").get<std::size_t>();
    r.failed_ops = j.at("failed_ops").get<std::size_t>();
    r.best = j.at("best").get<bool>();
    return r;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("bad report json: ") + e.what());
  }
}

void append_report(const std::string& path, const RunReport& r) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw IoError("cannot open report log: " + path);
  out << report_to_json(r) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

std::string sweep_csv(const std::vector<RunReport>& reports) {
  std::vector<bool> best(reports.size(), false);
  bool premarked = false;
  for (std::size_t i = 0; i < reports.size(); ++i)
    if (reports[i].best) {
      best[i] = true;
      premarked = true;
    }
  if (!premarked) {
    std::size_t arg = reports.size();
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (reports[i].status != "ok") continue;
      if (arg == reports.size() || reports[i].wall_ns < reports[arg].wall_ns)
        arg = i;
    }
    if (arg != reports.size()) best[arg] = true;
  }

  std::ostringstream out;
  out << "workload,dataset,strategy,partitioner,scheduler,coroutines,threads,"
         "batch_size,wall_ns,throughput,status,hints,yields,resumes,"
         "blocks_visited,records_visited,cache_references,cache_misses,"
         "result_digest,checksum,failed_ops,best\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const RunReport& r = reports[i];
    out << csv_field(r.workload) << ',' << csv_field(r.dataset) << ','
        << strategy_name(r.config.strategy) << ','
        << partitioner_name(r.config.partitioner) << ','
        << scheduler_name(r.config.scheduler) << ',' << r.config.coroutines
        << ',' << r.threads << ',' << r.batch_size << ',' << r.wall_ns << ','
        << r.throughput << ',' << csv_field(r.status) << ','
        << r.counters.hints << ',' << r.counters.yields << ','
        << r.counters.resumes << ',' << r.counters.blocks_visited << ','
        << r.counters.records_visited << ',';
    if (r.hw.available)
      out << r.hw.cache_references << ',' << r.hw.cache_misses << ',';
    else
      out << ",,";
    out << r.result_digest << ',' << r.checksum << ',' << r.failed_ops << ','
        << (best[i] ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace weft
