#pragma once

// JSON forms of traces, move sequences and trial records.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "networks.hpp"
#include "shellsort.hpp"
#include "trial.hpp"

namespace shellab {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

/// {"n", "p", "increments", "m": [[pass 1 by value], ...], "totals": {...}}
inline Json trace_to_json(const ShellTrace& t) {
  Json rows = Json::array();
  for (std::size_t k = 0; k < t.passes(); ++k) {
    const auto row = t.pass(k);
    rows.push_back(std::vector<std::uint64_t>(row.begin(), row.end()));
  }
  return Json{{"n", t.n},
              {"p", t.passes()},
              {"increments", t.increments},
              {"m", std::move(rows)},
              {"totals",
               {{"total_M", t.total_M},
                {"per_pass_inversions", t.per_pass_inversions},
                {"comparisons", t.comparisons},
                {"raw_comparisons", t.raw_comparisons}}}};
}

/// Counters in trace_encode order, read back from trace_to_json output.
inline std::vector<std::uint64_t> counters_from_json(const Json& j) {
  std::vector<std::uint64_t> flat;
  for (const auto& row : j.at("m"))
    for (const auto& v : row) flat.push_back(v.get<std::uint64_t>());
  return flat;
}

inline Json moves_to_json(std::span<const Move> moves) {
  Json arr = Json::array();
  for (const Move& mv : moves)
    arr.push_back(Json{{"op", mv.op == Op::push ? "push" : "pop"}, {"stack", mv.container}});
  return arr;
}

inline MoveSequence moves_from_json(const Json& arr) {
  MoveSequence out;
  for (const auto& e : arr) {
    const auto op = e.at("op").get<std::string>();
    if (op != "push" && op != "pop") throw std::invalid_argument("move: op must be push or pop");
    out.push_back({op == "push" ? Op::push : Op::pop, e.at("stack").get<std::uint32_t>()});
  }
  return out;
}

inline Json record_to_json(const TrialRecord& r) {
  Json metrics = Json::object();
  const auto& m = r.metrics;
  if (m.total_M) metrics["total_M"] = *m.total_M;
  if (!m.per_pass_inversions.empty()) metrics["per_pass_inversions"] = m.per_pass_inversions;
  if (m.comparisons) metrics["comparisons"] = *m.comparisons;
  if (m.raw_comparisons) metrics["raw_comparisons"] = *m.raw_comparisons;
  if (m.containers_used) metrics["containers_used"] = *m.containers_used;
  if (m.lis) metrics["lis"] = *m.lis;
  if (m.lds) metrics["lds"] = *m.lds;
  if (m.min_stacks) metrics["min_stacks"] = *m.min_stacks;

  Json j{{"schema_version", schema_version},
         {"record", "trial"},
         {"experiment", experiment_name(r.experiment)},
         {"n", r.n},
         {"p", r.p},
         {"family", r.family}};
  if (!r.increments.empty()) j["increments"] = r.increments;
  j["trial_index"] = r.trial_index;
  j["derived_seed"] = r.derived_seed;
  j["exhaustive"] = r.exhaustive;
  j["metrics"] = std::move(metrics);
  j["wall_time"] = r.wall_time;
  return j;
}

inline TrialRecord record_from_json(const Json& j) {
  TrialRecord r;
  r.experiment = parse_experiment(j.at("experiment").get<std::string>());
  r.n = j.at("n").get<std::size_t>();
  r.p = j.at("p").get<std::size_t>();
  r.family = j.at("family").get<std::string>();
  if (j.contains("increments")) r.increments = j.at("increments").get<std::string>();
  r.trial_index = j.at("trial_index").get<std::uint64_t>();
  r.derived_seed = j.at("derived_seed").get<std::uint64_t>();
  r.exhaustive = j.value("exhaustive", false);
  const auto& m = j.at("metrics");
  auto opt = [&](const char* key, std::optional<std::uint64_t>& dst) {
    if (m.contains(key)) dst = m.at(key).get<std::uint64_t>();
  };
  opt("total_M", r.metrics.total_M);
  opt("comparisons", r.metrics.comparisons);
  opt("raw_comparisons", r.metrics.raw_comparisons);
  opt("containers_used", r.metrics.containers_used);
  opt("lis", r.metrics.lis);
  opt("lds", r.metrics.lds);
  opt("min_stacks", r.metrics.min_stacks);
  if (m.contains("per_pass_inversions"))
    r.metrics.per_pass_inversions = m.at("per_pass_inversions").get<std::vector<std::uint64_t>>();
  r.wall_time = j.value("wall_time", 0.0);
  return r;
}

}  // namespace shellab
