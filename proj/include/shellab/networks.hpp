#pragma once

// Sorting with networks of stacks and queues.
//
// Parallel networks: every input element is pushed onto exactly one of
// several stacks (queues) and later popped to the output.
// Sequential networks: stacks S_0 .. S_{k-1} in series. Input enters S_0,
// a pop of S_j (j < k-1) is immediately pushed onto S_{j+1}, and a pop of
// S_{k-1} goes to the output.

#include <cassert>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "permutation.hpp"

namespace shellab {

enum class Op : std::uint8_t { push, pop };

struct Move {
  Op op;
  std::uint32_t container;
  friend bool operator==(const Move&, const Move&) = default;
};

using MoveSequence = std::vector<Move>;

inline Move push_to(std::uint32_t j) { return {Op::push, j}; }
inline Move pop_from(std::uint32_t j) { return {Op::pop, j}; }

/// Per container, no prefix of the sequence pops more than it pushed.
inline bool is_prefix_balanced(std::span<const Move> moves) {
  std::vector<std::int64_t> depth;
  for (const Move& mv : moves) {
    if (mv.container >= depth.size()) depth.resize(mv.container + 1, 0);
    depth[mv.container] += mv.op == Op::push ? 1 : -1;
    if (depth[mv.container] < 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Parallel stacks and queues
// ---------------------------------------------------------------------------

enum class ContainerKind { stack, queue };

/// Phase-one placement history, kept so a monotone witness can be traced back.
struct Provenance {
  static constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::uint32_t> container_of;  // by input position
  /// Input position of the element on top of (at the rear of) the previous
  /// container when this element was placed; `none` for container 0.
  std::vector<std::size_t> predecessor;
  std::size_t last_container_top = none;  // input position
};

struct ParallelRun {
  ContainerKind kind = ContainerKind::stack;
  std::size_t containers_used = 0;
  std::vector<std::size_t> container_final_sizes;  // after phase one
  MoveSequence move_log;
  Permutation output = Permutation::identity(1);
  std::optional<Provenance> provenance;
};

namespace detail {

// Shared driver. For stacks, `tops` stay strictly increasing across
// containers, for queues the rears stay strictly decreasing, so the first
// eligible container can be found by binary search.
inline ParallelRun parallel_sort(const Permutation& pi, ContainerKind kind, bool keep_provenance) {
  const std::size_t n = pi.size();
  const bool is_stack = kind == ContainerKind::stack;

  std::vector<std::vector<Value>> containers;
  std::vector<Value> ends;                 // top of each stack / rear of each queue
  std::vector<std::size_t> end_pos;        // input position of that element
  ParallelRun run;
  run.kind = kind;
  run.move_log.reserve(2 * n);
  Provenance prov;
  if (keep_provenance) {
    prov.container_of.resize(n);
    prov.predecessor.resize(n, Provenance::none);
  }

  for (std::size_t i = 0; i < n; ++i) {
    const Value x = pi[i];
    // Stacks: first j with top > x. Queues: first j with rear < x.
    const auto it = is_stack ? std::upper_bound(ends.begin(), ends.end(), x)
                             : std::upper_bound(ends.begin(), ends.end(), x, std::greater<>());
    const auto j = static_cast<std::size_t>(it - ends.begin());
    if (j == containers.size()) {
      containers.emplace_back();
      ends.push_back(x);
      end_pos.push_back(i);
    }
    if (keep_provenance) {
      prov.container_of[i] = static_cast<std::uint32_t>(j);
      if (j > 0) prov.predecessor[i] = end_pos[j - 1];
    }
    containers[j].push_back(x);
    ends[j] = x;
    end_pos[j] = i;
    run.move_log.push_back(push_to(static_cast<std::uint32_t>(j)));
    assert(is_stack ? std::is_sorted(ends.begin(), ends.end())
                    : std::is_sorted(ends.begin(), ends.end(), std::greater<>()));
  }

  run.containers_used = containers.size();
  run.container_final_sizes.reserve(containers.size());
  for (const auto& c : containers) run.container_final_sizes.push_back(c.size());
  if (keep_provenance) {
    prov.last_container_top = end_pos.empty() ? Provenance::none : end_pos.back();
    run.provenance = std::move(prov);
  }

  // Phase two: repeatedly remove the smallest exposed element.
  using Entry = std::pair<Value, std::uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  std::vector<std::size_t> front(containers.size(), 0);  // queues only
  auto exposed = [&](std::size_t j) -> std::optional<Value> {
    if (is_stack) {
      if (containers[j].empty()) return std::nullopt;
      return containers[j].back();
    }
    if (front[j] == containers[j].size()) return std::nullopt;
    return containers[j][front[j]];
  };
  for (std::size_t j = 0; j < containers.size(); ++j)
    if (auto v = exposed(j)) heap.emplace(*v, static_cast<std::uint32_t>(j));

  std::vector<Value> out;
  out.reserve(n);
  while (!heap.empty()) {
    const auto [v, j] = heap.top();
    heap.pop();
    out.push_back(v);
    run.move_log.push_back(pop_from(j));
    if (is_stack)
      containers[j].pop_back();
    else
      ++front[j];
    if (auto next = exposed(j)) heap.emplace(*next, j);
  }
  run.output = Permutation(std::move(out));
  return run;
}

}  // namespace detail

/// Greedy placement: x goes on the first stack whose top is larger than x,
/// else on a new stack. Then pop the smallest top until empty.
inline ParallelRun parallel_stack_sort(const Permutation& pi, bool keep_provenance = true) {
  return detail::parallel_sort(pi, ContainerKind::stack, keep_provenance);
}

/// Greedy placement: x is appended to the first queue whose rear is smaller
/// than x, else to a new queue. Then dequeue the smallest front until empty.
inline ParallelRun parallel_queue_sort(const Permutation& pi, bool keep_provenance = true) {
  return detail::parallel_sort(pi, ContainerKind::queue, keep_provenance);
}

namespace detail {

inline std::vector<std::size_t> backtrace(const ParallelRun& run, ContainerKind expected) {
  if (run.kind != expected)
    throw std::invalid_argument("backtrace: run was produced by the other container kind");
  if (!run.provenance) throw std::invalid_argument("backtrace: run has no provenance");
  const Provenance& prov = *run.provenance;
  std::vector<std::size_t> out;
  for (std::size_t pos = prov.last_container_top; pos != Provenance::none; pos = prov.predecessor[pos])
    out.push_back(pos);
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Input positions of an increasing subsequence with one element per stack,
/// followed back from the top of the last stack.
inline std::vector<std::size_t> backtrace_increasing_witness(const ParallelRun& run) {
  return detail::backtrace(run, ContainerKind::stack);
}

/// Queue analogue: a decreasing subsequence with one element per queue.
inline std::vector<std::size_t> backtrace_decreasing_witness(const ParallelRun& run) {
  return detail::backtrace(run, ContainerKind::queue);
}

// ---------------------------------------------------------------------------
// Sequential stacks
// ---------------------------------------------------------------------------

struct SimulationResult {
  std::vector<Value> output;
  bool ok = false;
  std::optional<std::size_t> error_index;  // offending move; schedule size if incomplete
  std::string error;
};

/// Runs `schedule` on k stacks in series. push(0) consumes the next input
/// element; pop(j) for j < k-1 must be followed directly by push(j+1), which
/// receives the popped element; pop(k-1) appends to the output.
inline SimulationResult sequential_simulate(const Permutation& pi, std::span<const Move> schedule,
                                            std::size_t k) {
  SimulationResult res;
  auto fail = [&](std::size_t idx, std::string why) {
    res.ok = false;
    res.error_index = idx;
    res.error = std::move(why);
    return res;
  };
  if (k == 0) return fail(0, "network needs at least one stack");
  std::vector<std::vector<Value>> stacks(k);
  std::size_t next_input = 0;
  std::optional<Value> in_transit;

  for (std::size_t t = 0; t < schedule.size(); ++t) {
    const Move mv = schedule[t];
    if (mv.container >= k) return fail(t, "stack index out of range");
    const std::size_t j = mv.container;
    if (in_transit && !(mv.op == Op::push && j > 0))
      return fail(t, "element popped into the next stack was not pushed there");
    if (mv.op == Op::push) {
      if (j == 0) {
        if (next_input == pi.size()) return fail(t, "push with input exhausted");
        stacks[0].push_back(pi[next_input++]);
      } else {
        if (!in_transit) return fail(t, "push onto S_" + std::to_string(j) + " without a pop of S_" +
                                            std::to_string(j - 1));
        stacks[j].push_back(*in_transit);
        in_transit.reset();
      }
    } else {
      if (stacks[j].empty()) return fail(t, "pop of empty stack S_" + std::to_string(j));
      const Value v = stacks[j].back();
      stacks[j].pop_back();
      if (j + 1 == k) {
        res.output.push_back(v);
      } else {
        if (t + 1 >= schedule.size() || schedule[t + 1].op != Op::push ||
            schedule[t + 1].container != j + 1)
          return fail(t, "pop of S_" + std::to_string(j) + " must be followed by push onto S_" +
                             std::to_string(j + 1));
        in_transit = v;
      }
    }
  }
  bool sorted = res.output.size() == pi.size();
  for (std::size_t i = 0; sorted && i < res.output.size(); ++i) sorted = res.output[i] == i + 1;
  if (!sorted) return fail(schedule.size(), "schedule did not produce the sorted output");
  res.ok = true;
  return res;
}

class SearchBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

class ScheduleSearch {
 public:
  ScheduleSearch(const Permutation& pi, std::size_t k, std::uint64_t budget)
      : pi_(pi), k_(k), budget_(budget), stacks_(k) {}

  std::optional<MoveSequence> run() {
    if (dfs(0, 0)) return path_;
    return std::nullopt;
  }

  std::uint64_t states() const noexcept { return states_; }

 private:
  std::string key(std::size_t consumed) const {
    std::string s;
    s.push_back(static_cast<char>(consumed));
    for (const auto& st : stacks_) {
      s.append(reinterpret_cast<const char*>(st.data()), st.size() * sizeof(Value));
      s.push_back('\xff');
    }
    return s;
  }

  bool dfs(std::size_t consumed, std::size_t emitted) {
    if (emitted == pi_.size()) return true;
    std::string state = key(consumed);
    if (failed_.contains(state)) return false;
    if (++states_ > budget_)
      throw SearchBudgetExceeded("sequential search: state budget of " + std::to_string(budget_) +
                                 " exceeded");
    const auto last = static_cast<std::uint32_t>(k_ - 1);

    // Output, when the top of the last stack is the next value due.
    if (!stacks_[last].empty() && stacks_[last].back() == emitted + 1) {
      stacks_[last].pop_back();
      path_.push_back(pop_from(last));
      if (dfs(consumed, emitted + 1)) return true;
      path_.pop_back();
      stacks_[last].push_back(static_cast<Value>(emitted + 1));
    }
    // Transfers, nearest the output first.
    for (std::size_t j = k_ - 1; j-- > 0;) {
      if (stacks_[j].empty()) continue;
      const Value v = stacks_[j].back();
      stacks_[j].pop_back();
      stacks_[j + 1].push_back(v);
      path_.push_back(pop_from(static_cast<std::uint32_t>(j)));
      path_.push_back(push_to(static_cast<std::uint32_t>(j + 1)));
      if (dfs(consumed, emitted)) return true;
      path_.resize(path_.size() - 2);
      stacks_[j + 1].pop_back();
      stacks_[j].push_back(v);
    }
    if (consumed < pi_.size()) {
      stacks_[0].push_back(pi_[consumed]);
      path_.push_back(push_to(0));
      if (dfs(consumed + 1, emitted)) return true;
      path_.pop_back();
      stacks_[0].pop_back();
    }
    failed_.insert(std::move(state));
    return false;
  }

  const Permutation& pi_;
  std::size_t k_;
  std::uint64_t budget_;
  std::uint64_t states_ = 0;
  std::vector<std::vector<Value>> stacks_;
  MoveSequence path_;
  std::unordered_set<std::string> failed_;
};

}  // namespace detail

inline constexpr std::uint64_t default_search_budget = 5'000'000;

/// A complete sorting schedule on k stacks in series, or nullopt if none
/// exists. Throws SearchBudgetExceeded rather than guessing.
inline std::optional<MoveSequence> find_sorting_schedule(const Permutation& pi, std::size_t k,
                                                         std::uint64_t budget = default_search_budget) {
  if (k == 0) throw std::invalid_argument("find_sorting_schedule: k must be at least 1");
  if (pi.size() > 250) throw std::invalid_argument("find_sorting_schedule: n too large for exhaustive search");
  return detail::ScheduleSearch(pi, k, budget).run();
}

struct StackSearchResult {
  std::optional<std::size_t> min_stacks;  // nullopt: none up to k_max
  MoveSequence witness;
};

/// Smallest k <= k_max for which a sorting schedule exists, with one schedule.
inline StackSearchResult sequential_search_min_stacks(const Permutation& pi, std::size_t k_max = 6,
                                                      std::uint64_t budget = default_search_budget) {
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (auto s = find_sorting_schedule(pi, k, budget)) return {k, std::move(*s)};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Push/pop bitstrings
// ---------------------------------------------------------------------------

/// One '0'/'1' string per stack ('0' push, '1' pop), plus the global order of
/// atomic steps the schedule used: 0 = input into S_0, j = transfer
/// S_{j-1} -> S_j, k = output from S_{k-1}.
struct PushPopCode {
  std::vector<std::string> strings;
  std::vector<std::uint32_t> steps;

  std::size_t string_bits() const noexcept {
    std::size_t s = 0;
    for (const auto& str : strings) s += str.size();
    return s;
  }
  /// Cost of spelling out the interleaving explicitly: ceil(log2(k+1)) bits per step.
  std::size_t interleaving_bits() const noexcept {
    const std::size_t k = strings.size();
    std::size_t width = 0;
    while ((std::size_t{1} << width) < k + 1) ++width;
    return steps.size() * width;
  }
};

inline PushPopCode pushpop_encode(std::span<const Move> schedule, std::size_t k) {
  PushPopCode code;
  code.strings.assign(k, std::string());
  for (std::size_t t = 0; t < schedule.size(); ++t) {
    const Move mv = schedule[t];
    if (mv.container >= k) throw std::invalid_argument("pushpop_encode: stack index out of range");
    code.strings[mv.container].push_back(mv.op == Op::push ? '0' : '1');
    if (mv.op == Op::push && mv.container == 0) code.steps.push_back(0);
    if (mv.op == Op::push && mv.container > 0) code.steps.push_back(mv.container);
    if (mv.op == Op::pop && mv.container + 1 == k) code.steps.push_back(static_cast<std::uint32_t>(k));
  }
  if (!is_prefix_balanced(schedule)) throw std::invalid_argument("pushpop_encode: schedule is not balanced");
  return code;
}

namespace detail {

inline void check_balanced(const std::vector<std::string>& strings, std::size_t k, std::size_t n) {
  if (strings.size() != k)
    throw std::invalid_argument("pushpop: expected " + std::to_string(k) + " strings");
  for (std::size_t j = 0; j < k; ++j) {
    const auto& s = strings[j];
    if (s.size() != 2 * n)
      throw std::invalid_argument("pushpop: string " + std::to_string(j) + " must have length 2n");
    std::int64_t depth = 0;
    for (char c : s) {
      if (c != '0' && c != '1') throw std::invalid_argument("pushpop: strings must be over {0,1}");
      depth += c == '0' ? 1 : -1;
      if (depth < 0) throw std::invalid_argument("pushpop: string " + std::to_string(j) + " is unbalanced");
    }
    if (depth != 0) throw std::invalid_argument("pushpop: string " + std::to_string(j) + " is unbalanced");
  }
}

}  // namespace detail

/// Deterministic merge of per-stack strings into a schedule: at each step
/// take the output if enabled, else the transfer nearest the output, else
/// an input push. Enabled steps never compete for the same string head, so
/// if any complete interleaving exists this one finds it.
inline MoveSequence canonical_interleaving(const std::vector<std::string>& strings, std::size_t k,
                                           std::size_t n) {
  detail::check_balanced(strings, k, n);
  std::vector<std::size_t> head(k, 0);
  auto next = [&](std::size_t j) -> char {
    return head[j] < strings[j].size() ? strings[j][head[j]] : '\0';
  };
  MoveSequence out;
  out.reserve(2 * k * n);
  while (out.size() < 2 * k * n) {
    if (next(k - 1) == '1') {
      out.push_back(pop_from(static_cast<std::uint32_t>(k - 1)));
      ++head[k - 1];
      continue;
    }
    bool moved = false;
    for (std::size_t j = k - 1; j-- > 0;) {
      if (next(j) == '1' && next(j + 1) == '0') {
        out.push_back(pop_from(static_cast<std::uint32_t>(j)));
        out.push_back(push_to(static_cast<std::uint32_t>(j + 1)));
        ++head[j];
        ++head[j + 1];
        moved = true;
        break;
      }
    }
    if (moved) continue;
    if (next(0) == '0') {
      out.push_back(push_to(0));
      ++head[0];
      continue;
    }
    throw std::invalid_argument("pushpop: strings admit no consistent interleaving");
  }
  return out;
}

/// Recovers the input permutation from the per-stack strings alone. The r-th
/// element leaving S_j is the r-th entering S_{j+1}, and the r-th leaving
/// S_{k-1} is the value r, so LIFO matching within each string carries values
/// back to input positions. The result is then replayed to confirm it.
inline Permutation pushpop_decode(const std::vector<std::string>& strings, std::size_t k, std::size_t n) {
  if (k == 0 || n == 0) throw std::invalid_argument("pushpop_decode: k and n must be positive");
  detail::check_balanced(strings, k, n);

  // value_of_pop[r]: value of the r-th element popped from the current stack.
  std::vector<Value> value_of_pop(n);
  for (std::size_t r = 0; r < n; ++r) value_of_pop[r] = static_cast<Value>(r + 1);
  std::vector<Value> value_of_push(n);
  std::vector<std::size_t> open;
  for (std::size_t j = k; j-- > 0;) {
    const auto& s = strings[j];
    std::size_t pushes = 0, pops = 0;
    open.clear();
    for (char c : s) {
      if (c == '0') {
        open.push_back(pushes++);
      } else {
        value_of_push[open.back()] = value_of_pop[pops++];
        open.pop_back();
      }
    }
    value_of_pop = value_of_push;  // pushes into S_j are pops of S_{j-1}
  }
  Permutation pi(std::move(value_of_push));
  const MoveSequence replay = canonical_interleaving(strings, k, n);
  const SimulationResult sim = sequential_simulate(pi, replay, k);
  if (!sim.ok) throw std::invalid_argument("pushpop_decode: strings do not replay: " + sim.error);
  return pi;
}

}  // namespace shellab
