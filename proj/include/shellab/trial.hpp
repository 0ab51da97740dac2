#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace shellab {

enum class Experiment { shellsort, pstacks, pqueues, seqsearch, bounds, verify };

inline const char* experiment_name(Experiment e) {
  switch (e) {
    case Experiment::shellsort: return "shellsort";
    case Experiment::pstacks: return "pstacks";
    case Experiment::pqueues: return "pqueues";
    case Experiment::seqsearch: return "seqsearch";
    case Experiment::bounds: return "bounds";
    case Experiment::verify: return "verify";
  }
  return "?";
}

inline Experiment parse_experiment(const std::string& s) {
  for (auto e : {Experiment::shellsort, Experiment::pstacks, Experiment::pqueues,
                 Experiment::seqsearch, Experiment::bounds, Experiment::verify})
    if (s == experiment_name(e)) return e;
  throw std::invalid_argument("unknown experiment '" + s + "'");
}

struct TrialKey {
  Experiment experiment = Experiment::shellsort;
  std::size_t n = 0;
  std::size_t p = 0;
  std::string family;

  friend auto operator<=>(const TrialKey&, const TrialKey&) = default;
};

struct TrialMetrics {
  std::optional<std::uint64_t> total_M;
  std::vector<std::uint64_t> per_pass_inversions;
  std::optional<std::uint64_t> comparisons;      // sum of (m + 1)
  std::optional<std::uint64_t> raw_comparisons;  // executed by the scan loop
  std::optional<std::uint64_t> containers_used;
  std::optional<std::uint64_t> lis;
  std::optional<std::uint64_t> lds;
  std::optional<std::uint64_t> min_stacks;
};

/// One seeded (or enumerated) trial.
struct TrialRecord {
  Experiment experiment = Experiment::shellsort;
  std::size_t n = 0;
  std::size_t p = 0;
  std::string family;
  std::string increments;  // shellsort only
  std::uint64_t trial_index = 0;
  std::uint64_t derived_seed = 0;
  bool exhaustive = false;  // trial_index is a lexicographic rank, not a seed index
  TrialMetrics metrics;
  double wall_time = 0;  // seconds; not reproducible

  TrialKey key() const { return {experiment, n, p, family}; }

  /// total_M, containers_used, or min_stacks depending on the experiment.
  double primary_metric() const {
    const std::optional<std::uint64_t>* v = nullptr;
    switch (experiment) {
      case Experiment::shellsort: v = &metrics.total_M; break;
      case Experiment::pstacks:
      case Experiment::pqueues: v = &metrics.containers_used; break;
      case Experiment::seqsearch: v = &metrics.min_stacks; break;
      default: break;
    }
    if (!v || !*v) throw std::invalid_argument("trial record has no primary metric");
    return static_cast<double>(**v);
  }
};

}  // namespace shellab
