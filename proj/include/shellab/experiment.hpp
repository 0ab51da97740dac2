#pragma once

// Experiment runner: configuration, seeded trials on a worker pool, record
// and summary emission, the bundled exhaustive verification checks, and the
// lower-bound table.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "analysis.hpp"
#include "increments.hpp"
#include "io.hpp"
#include "networks.hpp"
#include "permutation.hpp"
#include "shellsort.hpp"
#include "trial.hpp"

namespace shellab {

// ---------------------------------------------------------------------------
// Increment families as named in configs and on the command line
// ---------------------------------------------------------------------------

/// "shell", "pratt", "target", "chazelle:A", "geometric:R", "cuberoot:C"
/// (two passes, h_1 = C * ceil(n^(1/3))), or "custom:H1,H2,...,1".
struct FamilySpec {
  std::string kind;
  double parameter = 0;
  std::string custom;

  static FamilySpec parse(const std::string& s) {
    FamilySpec f;
    const auto colon = s.find(':');
    f.kind = s.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
    auto need_arg = [&] {
      if (arg.empty()) throw std::invalid_argument("family '" + f.kind + "' needs a parameter");
    };
    if (f.kind == "shell" || f.kind == "pratt" || f.kind == "target") {
      if (!arg.empty()) throw std::invalid_argument("family '" + f.kind + "' takes no parameter");
    } else if (f.kind == "chazelle" || f.kind == "geometric" || f.kind == "cuberoot") {
      need_arg();
      try {
        f.parameter = std::stod(arg);
      } catch (const std::exception&) {
        throw std::invalid_argument("family '" + s + "': bad parameter");
      }
    } else if (f.kind == "custom") {
      need_arg();
      f.custom = arg;
      IncrementSequence::parse(arg);
    } else {
      throw std::invalid_argument("unknown increment family '" + s + "'");
    }
    return f;
  }

  /// Whether the pass count comes from the p grid.
  bool uses_p_grid() const { return kind == "target"; }

  std::string label() const {
    std::ostringstream os;
    os << kind;
    if (kind == "chazelle" || kind == "geometric" || kind == "cuberoot") os << '(' << parameter << ')';
    if (kind == "custom") os << '(' << custom << ')';
    return os.str();
  }

  IncrementSequence make(std::size_t n, std::size_t p) const {
    if (kind == "shell") return gen_shell_original(n);
    if (kind == "pratt") return gen_pratt(n);
    if (kind == "target") return target_pass_count(n, p);
    if (kind == "chazelle") return gen_chazelle(n, static_cast<std::size_t>(parameter));
    if (kind == "geometric") return gen_geometric(n, parameter);
    if (kind == "cuberoot") return two_pass_cube_root(n, parameter);
    return IncrementSequence::parse(custom);
  }

  /// (h, 1) with h = round(c * ceil(n^(1/3))), for the two-pass regime.
  static IncrementSequence two_pass_cube_root(std::size_t n, double c) {
    const auto base = static_cast<double>(std::ceil(std::cbrt(static_cast<double>(n)) - 1e-9));
    const auto h = static_cast<std::size_t>(std::llround(c * base));
    if (h < 2 || h >= n) throw std::invalid_argument("cuberoot: increment out of range for n");
    return IncrementSequence({h, 1});
  }
};

/// {1, 2, 3, ceil(log n / log log n), ceil(log n)}, deduplicated, p < n only.
inline std::vector<std::size_t> default_p_grid(std::size_t n) {
  std::set<std::size_t> ps{1, 2, 3};
  const double lg = std::log2(static_cast<double>(n));
  if (lg > 1.0) {
    const double lglg = std::log2(lg);
    if (lglg > 0) ps.insert(static_cast<std::size_t>(std::ceil(lg / lglg)));
  }
  ps.insert(static_cast<std::size_t>(std::max(1.0, std::ceil(lg))));
  std::vector<std::size_t> out;
  for (auto p : ps)
    if (p < n) out.push_back(p);
  return out;
}

inline std::vector<std::size_t> default_n_grid() { return {1u << 8, 1u << 10, 1u << 12, 1u << 14}; }

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

struct ExperimentConfig {
  Experiment experiment = Experiment::shellsort;
  std::vector<std::size_t> n_grid;
  std::vector<std::size_t> p_grid;  // empty: default_p_grid(n) per n
  std::vector<std::string> families{"shell", "pratt", "target"};
  std::uint64_t trials = 100;
  std::uint64_t master_seed = 1;
  std::string output_path;
  unsigned threads = 1;
  bool exhaustive = false;
  std::size_t k_max = 6;

  std::vector<std::size_t> p_values(std::size_t n) const {
    if (p_grid.empty()) return default_p_grid(n);
    return p_grid;
  }

  void validate() const {
    if (n_grid.empty()) throw std::invalid_argument("config: n grid is empty");
    if (trials < 1) throw std::invalid_argument("config: trials must be at least 1");
    if (threads < 1) throw std::invalid_argument("config: threads must be at least 1");
    for (auto n : n_grid)
      if (n < 1) throw std::invalid_argument("config: every n must be at least 1");
    if (experiment == Experiment::shellsort) {
      if (families.empty()) throw std::invalid_argument("config: no increment families");
      for (const auto& f : families) FamilySpec::parse(f);
    }
    if (experiment == Experiment::shellsort) {
      for (auto n : n_grid)
        for (auto p : p_grid)
          if (p < 1 || p >= n)
            throw std::invalid_argument("config: pair (n=" + std::to_string(n) + ", p=" + std::to_string(p) +
                                        ") violates 1 <= p < n");
    }
    if (exhaustive || experiment == Experiment::seqsearch) {
      const std::size_t limit = experiment == Experiment::seqsearch ? 8 : 10;
      for (auto n : n_grid)
        if (n > limit)
          throw std::invalid_argument("config: exhaustive mode supports n <= " + std::to_string(limit));
    }
  }

  /// Keys mirror the long command-line flags.
  static ExperimentConfig from_json(const Json& j) {
    ExperimentConfig c;
    if (j.contains("experiment")) c.experiment = parse_experiment(j.at("experiment").get<std::string>());
    if (j.contains("n")) c.n_grid = j.at("n").get<std::vector<std::size_t>>();
    if (j.contains("p")) c.p_grid = j.at("p").get<std::vector<std::size_t>>();
    if (j.contains("family")) c.families = j.at("family").get<std::vector<std::string>>();
    if (j.contains("trials")) c.trials = j.at("trials").get<std::uint64_t>();
    if (j.contains("seed")) c.master_seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out")) c.output_path = j.at("out").get<std::string>();
    if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
    if (j.contains("exhaustive")) c.exhaustive = j.at("exhaustive").get<bool>();
    if (j.contains("k_max")) c.k_max = j.at("k_max").get<std::size_t>();
    return c;
  }
};

// ---------------------------------------------------------------------------
// Trials
// ---------------------------------------------------------------------------

struct TrialTask {
  Experiment experiment;
  std::size_t n;
  std::size_t p;  // requested pass count; 0 when the family decides
  std::optional<FamilySpec> family;
  std::uint64_t trial_index;
  std::uint64_t master_seed;
  bool exhaustive;
  std::size_t k_max;
};

inline std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

namespace detail {

inline Permutation task_permutation(const TrialTask& t, std::uint64_t& derived) {
  if (t.exhaustive) {
    derived = 0;
    return nth_permutation(t.n, t.trial_index);
  }
  derived = Seed{t.master_seed, t.trial_index}.derived();
  return random_permutation_from_stream(t.n, derived);
}

inline void fill_shellsort(TrialRecord& r, const Permutation& pi, const IncrementSequence& inc) {
  std::vector<Value> a(pi.values().begin(), pi.values().end());
  const ShellTrace tr = shellsort_in_place(a, inc);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != i + 1) throw std::logic_error("shellsort produced unsorted output");
  r.p = inc.passes();
  r.increments = inc.to_string();
  r.metrics.total_M = tr.total_M;
  r.metrics.per_pass_inversions = tr.per_pass_inversions;
  r.metrics.comparisons = tr.total_comparisons();
  r.metrics.raw_comparisons = tr.total_raw_comparisons();
}

inline void fill_parallel(TrialRecord& r, const Permutation& pi) {
  const bool stacks = r.experiment == Experiment::pstacks;
  const ParallelRun run = stacks ? parallel_stack_sort(pi, false) : parallel_queue_sort(pi, false);
  if (!run.output.is_identity()) throw std::logic_error("parallel sort produced unsorted output");
  r.metrics.containers_used = run.containers_used;
  if (stacks)
    r.metrics.lis = longest_increasing_subsequence(pi).length;
  else
    r.metrics.lds = longest_decreasing_subsequence(pi).length;
}

}  // namespace detail

inline TrialRecord run_trial(const TrialTask& t) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord r;
  r.experiment = t.experiment;
  r.n = t.n;
  r.p = t.p;
  r.trial_index = t.trial_index;
  r.exhaustive = t.exhaustive;
  const Permutation pi = detail::task_permutation(t, r.derived_seed);
  switch (t.experiment) {
    case Experiment::shellsort:
      r.family = t.family->label();
      detail::fill_shellsort(r, pi, t.family->make(t.n, t.p));
      break;
    case Experiment::pstacks:
    case Experiment::pqueues:
      r.family = "greedy";
      detail::fill_parallel(r, pi);
      break;
    case Experiment::seqsearch: {
      r.family = "dfs";
      const auto res = sequential_search_min_stacks(pi, t.k_max);
      if (!res.min_stacks)
        throw std::runtime_error("seqsearch: no schedule with at most " + std::to_string(t.k_max) +
                                 " stacks for " + pi.to_string());
      r.metrics.min_stacks = *res.min_stacks;
      break;
    }
    default:
      throw std::invalid_argument("run_trial: experiment has no per-trial work");
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// Re-executes a recorded trial from its own fields (derived seed or
/// lexicographic rank, and the recorded increments).
inline TrialRecord rerun_trial(const TrialRecord& rec) {
  const Permutation pi = rec.exhaustive ? nth_permutation(rec.n, rec.trial_index)
                                        : random_permutation_from_stream(rec.n, rec.derived_seed);
  TrialRecord r = rec;
  r.metrics = {};
  switch (rec.experiment) {
    case Experiment::shellsort: detail::fill_shellsort(r, pi, IncrementSequence::parse(rec.increments)); break;
    case Experiment::pstacks:
    case Experiment::pqueues: detail::fill_parallel(r, pi); break;
    case Experiment::seqsearch: {
      const auto res = sequential_search_min_stacks(pi);
      if (res.min_stacks) r.metrics.min_stacks = *res.min_stacks;
      break;
    }
    default: throw std::invalid_argument("rerun_trial: experiment has no per-trial work");
  }
  return r;
}

inline std::vector<TrialTask> plan_tasks(const ExperimentConfig& cfg) {
  std::vector<std::size_t> ns = cfg.n_grid;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  std::vector<TrialTask> tasks;
  auto add_trials = [&](std::size_t n, std::size_t p, const std::optional<FamilySpec>& fam) {
    const bool exhaustive = cfg.exhaustive || cfg.experiment == Experiment::seqsearch;
    const std::uint64_t count = exhaustive ? factorial(n) : cfg.trials;
    for (std::uint64_t t = 0; t < count; ++t)
      tasks.push_back({cfg.experiment, n, p, fam, t, cfg.master_seed, exhaustive, cfg.k_max});
  };
  for (auto n : ns) {
    if (cfg.experiment == Experiment::shellsort) {
      for (const auto& f : cfg.families) {
        const auto fam = FamilySpec::parse(f);
        if (fam.uses_p_grid()) {
          for (auto p : cfg.p_values(n)) add_trials(n, p, fam);
        } else {
          add_trials(n, 0, fam);
        }
      }
    } else {
      add_trials(n, 0, std::nullopt);
    }
  }
  return tasks;
}

/// Runs every task on `threads` workers; results come back in task order.
inline std::vector<TrialRecord> run_tasks(const std::vector<TrialTask>& tasks, unsigned threads) {
  std::vector<TrialRecord> out(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      try {
        out[i] = run_trial(tasks[i]);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next = tasks.size();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

/// Canonical record order: (n, p, family, trial_index).
inline void sort_records(std::vector<TrialRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const TrialRecord& a, const TrialRecord& b) {
    return std::tie(a.n, a.p, a.family, a.trial_index) < std::tie(b.n, b.p, b.family, b.trial_index);
  });
}

// ---------------------------------------------------------------------------
// Summaries
// ---------------------------------------------------------------------------

struct ExperimentResult {
  std::vector<TrialRecord> records;
  std::vector<TrialSummary> groups;
  std::vector<std::pair<std::string, FitResult>> fits;
  Json summary;
};

namespace detail {

inline std::string fit_key(const TrialSummary& g) {
  // Families whose pass count is fixed per group fit separately by p.
  if (g.key.family.rfind("target", 0) == 0) return g.key.family + "@p=" + std::to_string(g.key.p);
  return g.key.family;
}

inline Json summarize(const ExperimentConfig& cfg, const std::vector<TrialSummary>& groups,
                      std::vector<std::pair<std::string, FitResult>>& fits) {
  Json jg = Json::array();
  std::map<std::string, std::vector<FitPoint>> by_fit;
  for (const auto& g : groups) {
    Json row{{"experiment", experiment_name(g.key.experiment)},
             {"n", g.key.n},
             {"p", g.key.p},
             {"family", g.key.family},
             {"trials", g.stats.count()},
             {"mean", g.stats.mean()},
             {"stderr", g.stats.std_error_of_mean() ? Json(*g.stats.std_error_of_mean()) : Json(nullptr)},
             {"min", g.stats.min()},
             {"max", g.stats.max()}};
    if (g.key.experiment == Experiment::shellsort && g.key.p >= 1 && g.key.p < g.key.n) {
      const BoundQuery q(g.key.n, g.key.p);
      const auto m_star = inversion_lower_bound(q);
      row["M_star"] = m_star;
      row["mean_ge_M_star"] = g.stats.mean() >= static_cast<double>(m_star);
    }
    if (g.key.experiment == Experiment::pstacks || g.key.experiment == Experiment::pqueues) {
      row["mean_over_sqrt_n"] = g.stats.mean() / std::sqrt(static_cast<double>(g.key.n));
      row["e_sqrt_n"] = std::numbers::e * std::sqrt(static_cast<double>(g.key.n));
    }
    jg.push_back(std::move(row));
    by_fit[fit_key(g)].push_back({static_cast<double>(g.key.n), g.stats.mean(),
                                  g.stats.std_error_of_mean().value_or(0.0), g.stats.count()});
  }
  Json jf = Json::array();
  for (auto& [key, pts] : by_fit) {
    std::set<double> distinct;
    for (const auto& p : pts) distinct.insert(p.n);
    if (distinct.size() < 3) continue;
    try {
      FitResult fit = fit_power_law(std::span<const FitPoint>(pts));
      jf.push_back(Json{{"family", key},
                        {"exponent", fit.exponent},
                        {"constant", fit.constant},
                        {"r_squared", fit.r_squared},
                        {"points", fit.points.size()},
                        {"rejected", fit.rejected.size()}});
      fits.emplace_back(key, std::move(fit));
    } catch (const std::invalid_argument&) {
      // too few positive means; nothing to fit
    }
  }
  return Json{{"schema_version", schema_version},
              {"record", "summary"},
              {"experiment", experiment_name(cfg.experiment)},
              {"master_seed", cfg.master_seed},
              {"groups", std::move(jg)},
              {"fits", std::move(jf)}};
}

}  // namespace detail

inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.experiment == Experiment::bounds || cfg.experiment == Experiment::verify)
    throw std::invalid_argument("run_experiment: '" + std::string(experiment_name(cfg.experiment)) +
                                "' does not produce trial records");
  ExperimentResult res;
  res.records = run_tasks(plan_tasks(cfg), cfg.threads);
  sort_records(res.records);
  res.groups = summarize_trials(res.records);
  res.summary = detail::summarize(cfg, res.groups, res.fits);
  return res;
}

/// One JSON object per line per trial, then the summary object.
inline void write_jsonl(std::ostream& os, const ExperimentResult& res) {
  for (const auto& r : res.records) os << record_to_json(r).dump() << '\n';
  os << res.summary.dump() << '\n';
}

inline constexpr const char* summary_csv_header = "experiment,n,p,family,trials,mean,stderr,min,max,M_star";

inline void write_summary_csv(std::ostream& os, const ExperimentResult& res) {
  os << summary_csv_header << '\n';
  for (const auto& g : res.summary.at("groups")) {
    os << g.at("experiment").get<std::string>() << ',' << g.at("n") << ',' << g.at("p") << ",\""
       << g.at("family").get<std::string>() << "\"," << g.at("trials") << ',' << g.at("mean") << ','
       << (g.at("stderr").is_null() ? std::string() : g.at("stderr").dump()) << ',' << g.at("min") << ','
       << g.at("max") << ',' << (g.contains("M_star") ? g.at("M_star").dump() : std::string()) << '\n';
  }
}

/// Blocks of "n mean" lines, one block per fit series, separated by blank lines.
inline void write_plot_data(std::ostream& os, const ExperimentResult& res) {
  std::map<std::string, std::vector<std::pair<std::size_t, double>>> series;
  for (const auto& g : res.groups) series[detail::fit_key(g)].emplace_back(g.key.n, g.stats.mean());
  bool first = true;
  for (const auto& [key, pts] : series) {
    if (!first) os << "\n\n";
    first = false;
    os << "# " << key << '\n';
    for (const auto& [n, mean] : pts) os << n << ' ' << mean << '\n';
  }
}

// ---------------------------------------------------------------------------
// Lower-bound table
// ---------------------------------------------------------------------------

struct BoundTable {
  std::string csv;
  std::vector<std::string> warnings;
  std::size_t rows = 0;
};

inline constexpr const char* bound_csv_header = "n,p,M_star,p_n_ratio";

/// One row per valid (n, p); invalid pairs are skipped with a warning.
/// An empty p grid means default_p_grid(n) for each n.
inline BoundTable emit_bound_table(const std::vector<std::size_t>& n_grid, const std::vector<std::size_t>& p_grid) {
  BoundTable t;
  std::ostringstream os;
  os << bound_csv_header << '\n';
  for (auto n : n_grid) {
    const auto ps = p_grid.empty() ? default_p_grid(n) : p_grid;
    for (auto p : ps) {
      if (p < 1 || p >= n) {
        t.warnings.push_back("skipping (n=" + std::to_string(n) + ", p=" + std::to_string(p) +
                             "): need 1 <= p < n");
        continue;
      }
      const BoundQuery q(n, p);
      const auto m_star = inversion_lower_bound(q);
      char ratio[64];
      std::snprintf(ratio, sizeof ratio, "%.6g", bound_ratio(q, m_star));
      os << n << ',' << p << ',' << m_star << ',' << ratio << '\n';
      ++t.rows;
    }
  }
  t.csv = os.str();
  return t;
}

// ---------------------------------------------------------------------------
// Verification suite
// ---------------------------------------------------------------------------

struct CheckResult {
  explicit CheckResult(std::string check_name) : name(std::move(check_name)) {}

  std::string name;
  bool passed = true;
  std::uint64_t cases = 0;
  std::uint64_t permutations = 0;
  std::string counterexample;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
  std::uint64_t permutations_exhausted() const {
    std::uint64_t s = 0;
    for (const auto& c : checks) s += c.permutations;
    return s;
  }
};

struct VerifyOptions {
  std::size_t trace_codec_max_n = 7;
  std::size_t lis_max_n = 10;
  std::uint64_t composition_max = 12;
  std::size_t injectivity_max_n = 6;
  /// Applied to every encoded trace before decoding (fault injection).
  std::function<void(std::vector<std::uint64_t>&)> corrupt_trace;
};

namespace detail {

template <class F>
void for_each_permutation(std::size_t n, F&& f) {
  std::vector<Value> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Value>(i + 1);
  do {
    if (!f(v)) return;
  } while (std::next_permutation(v.begin(), v.end()));
}

inline std::string show(const std::vector<Value>& v) { return Permutation(v).to_string(); }

inline std::uint64_t count_compositions(std::uint64_t remaining, std::uint64_t parts) {
  if (parts == 1) return 1;
  std::uint64_t c = 0;
  for (std::uint64_t first = 0; first <= remaining; ++first) c += count_compositions(remaining - first, parts - 1);
  return c;
}

inline std::size_t lis_quadratic(const std::vector<Value>& v) {
  std::vector<std::size_t> best(v.size(), 1);
  std::size_t top = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (v[j] < v[i]) best[i] = std::max(best[i], best[j] + 1);
    top = std::max(top, best[i]);
  }
  return top;
}

}  // namespace detail

inline CheckResult verify_trace_codec(const VerifyOptions& opt) {
  CheckResult c{"trace codec round trip (n <= " + std::to_string(opt.trace_codec_max_n) + ")"};
  const std::vector<IncrementSequence> incs{IncrementSequence({1}), IncrementSequence({2, 1}),
                                            IncrementSequence({3, 2, 1})};
  for (std::size_t n = 1; n <= opt.trace_codec_max_n && c.passed; ++n) {
    for (const auto& inc : incs) {
      detail::for_each_permutation(n, [&](const std::vector<Value>& v) {
        const Permutation pi(v);
        auto counters = trace_encode(shellsort_traced(pi, inc).trace);
        if (opt.corrupt_trace) opt.corrupt_trace(counters);
        ++c.cases;
        std::string why;
        try {
          if (trace_decode(counters, inc, n) == pi) return true;
          why = "decoded to a different permutation";
        } catch (const std::exception& e) {
          why = e.what();
        }
        c.passed = false;
        c.counterexample = detail::show(v) + " with increments " + inc.to_string() + ": " + why;
        return false;
      });
      if (!c.passed) break;
    }
    c.permutations += factorial(n) * incs.size();
  }
  return c;
}

inline CheckResult verify_lis(const VerifyOptions& opt) {
  CheckResult c{"patience LIS / LDS and parallel containers vs quadratic DP (n <= " +
                std::to_string(opt.lis_max_n) + ")"};
  for (std::size_t n = 1; n <= opt.lis_max_n && c.passed; ++n) {
    detail::for_each_permutation(n, [&](const std::vector<Value>& v) {
      ++c.cases;
      const Permutation pi(v);
      const auto lis = longest_increasing_subsequence(pi).length;
      const auto lds = longest_decreasing_subsequence(pi).length;
      const auto dp_lis = detail::lis_quadratic(v);
      const Permutation comp = pi.complement();
      const auto dp_lds = detail::lis_quadratic(std::vector<Value>(comp.values().begin(), comp.values().end()));
      const auto stacks = parallel_stack_sort(pi, false).containers_used;
      const auto queues = parallel_queue_sort(pi, false).containers_used;
      if (lis == dp_lis && lds == dp_lds && stacks == dp_lis && queues == dp_lds) return true;
      c.passed = false;
      c.counterexample = detail::show(v) + ": patience (" + std::to_string(lis) + ", " + std::to_string(lds) +
                         "), containers (" + std::to_string(stacks) + ", " + std::to_string(queues) +
                         ") vs DP (" + std::to_string(dp_lis) + ", " + std::to_string(dp_lds) + ")";
      return false;
    });
    c.permutations += factorial(n);
  }
  return c;
}

inline CheckResult verify_compositions(const VerifyOptions& opt) {
  CheckResult c{"2^log_divisions vs composition enumeration (M, parts <= " +
                std::to_string(opt.composition_max) + ")"};
  for (std::uint64_t parts = 1; parts <= opt.composition_max; ++parts) {
    for (std::uint64_t M = 0; M <= opt.composition_max; ++M) {
      ++c.cases;
      const std::uint64_t brute = detail::count_compositions(M, parts);
      const auto computed = static_cast<std::uint64_t>(std::llround(std::exp2(log_divisions(M, parts))));
      if (brute != computed) {
        c.passed = false;
        c.counterexample = "M=" + std::to_string(M) + " parts=" + std::to_string(parts) + ": enumerated " +
                           std::to_string(brute) + ", computed " + std::to_string(computed);
        return c;
      }
    }
  }
  return c;
}

inline CheckResult verify_pushpop_injectivity(const VerifyOptions& opt) {
  CheckResult c{"push/pop strings injective and invertible (n <= " + std::to_string(opt.injectivity_max_n) + ")"};
  for (std::size_t n = 1; n <= opt.injectivity_max_n; ++n) {
    std::size_t k = 1;
    detail::for_each_permutation(n, [&](const std::vector<Value>& v) {
      const auto r = sequential_search_min_stacks(Permutation(v));
      if (!r.min_stacks) throw std::runtime_error("no schedule for " + detail::show(v));
      k = std::max(k, *r.min_stacks);
      return true;
    });
    std::set<std::vector<std::string>> seen;
    detail::for_each_permutation(n, [&](const std::vector<Value>& v) {
      ++c.cases;
      const Permutation pi(v);
      const auto schedule = find_sorting_schedule(pi, k);
      std::string why;
      if (!schedule) {
        why = "no " + std::to_string(k) + "-stack schedule";
      } else {
        const auto code = pushpop_encode(*schedule, k);
        if (!seen.insert(code.strings).second) {
          why = "bitstrings collide with another input";
        } else {
          try {
            if (!(pushpop_decode(code.strings, k, n) == pi)) why = "decoded to a different permutation";
          } catch (const std::exception& e) {
            why = e.what();
          }
        }
      }
      if (why.empty()) return true;
      c.passed = false;
      c.counterexample = detail::show(v) + ": " + why;
      return false;
    });
    c.permutations += factorial(n);
    if (!c.passed) break;
  }
  return c;
}

inline VerifyReport verify_suite(const VerifyOptions& opt = {}) {
  VerifyReport rep;
  rep.checks.push_back(verify_trace_codec(opt));
  rep.checks.push_back(verify_lis(opt));
  rep.checks.push_back(verify_compositions(opt));
  rep.checks.push_back(verify_pushpop_injectivity(opt));
  return rep;
}

inline void print_report(std::ostream& os, const VerifyReport& rep) {
  for (const auto& c : rep.checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.cases << " cases";
    if (c.permutations) os << ", " << c.permutations << " permutations";
    os << '\n';
    if (!c.passed) os << "  counterexample: " << c.counterexample << '\n';
  }
  os << "permutations exhausted: " << rep.permutations_exhausted() << '\n';
  os << (rep.passed() ? "all checks passed" : "verification FAILED") << '\n';
}

}  // namespace shellab
