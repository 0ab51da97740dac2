#pragma once

// Instrumented p-pass Shellsort and the trace codec that recovers the input
// permutation from the per-element inversion counters.
//
// For pass k with increment h, the h-chain of a position j is the set of
// positions congruent to j mod h. m(i, k) is the number of elements in value
// i's chain that sit to the left of i and are larger than i at the start of
// pass k. Straight insertion sort shifts i left exactly m(i, k) times.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "increments.hpp"
#include "permutation.hpp"

namespace shellab {

struct ShellTrace {
  std::size_t n = 0;
  std::vector<std::size_t> increments;
  /// Pass-major, value-minor: m[k * n + (i - 1)] for pass k (0-based), value i.
  std::vector<std::uint64_t> m;
  std::vector<std::uint64_t> per_pass_inversions;
  /// sum over i of (m(i,k) + 1); zero for a vacuous pass (h >= n).
  std::vector<std::uint64_t> comparisons;
  /// Key comparisons actually executed by the scan loop.
  std::vector<std::uint64_t> raw_comparisons;
  std::uint64_t total_M = 0;
  /// Element shifts counted inside the insertion loop, separately from m.
  std::uint64_t moves = 0;

  std::size_t passes() const noexcept { return increments.size(); }
  std::uint64_t at(Value i, std::size_t k) const noexcept { return m[k * n + (i - 1)]; }
  std::span<const std::uint64_t> pass(std::size_t k) const noexcept {
    return std::span<const std::uint64_t>(m).subspan(k * n, n);
  }
  std::uint64_t total_comparisons() const noexcept {
    std::uint64_t s = 0;
    for (auto c : comparisons) s += c;
    return s;
  }
  std::uint64_t total_raw_comparisons() const noexcept {
    std::uint64_t s = 0;
    for (auto c : raw_comparisons) s += c;
    return s;
  }
};

struct ShellsortResult {
  Permutation sorted;
  ShellTrace trace;
};

/// Sorts `a` (a permutation of 1..n in any container) in place and records the trace.
inline ShellTrace shellsort_in_place(std::span<Value> a, const IncrementSequence& inc) {
  const std::size_t n = a.size();
  const std::size_t p = inc.passes();
  ShellTrace t;
  t.n = n;
  t.increments = inc.increments();
  t.m.assign(n * p, 0);
  t.per_pass_inversions.assign(p, 0);
  t.comparisons.assign(p, 0);
  t.raw_comparisons.assign(p, 0);

  for (std::size_t k = 0; k < p; ++k) {
    const std::size_t h = inc[k];
    if (h >= n) continue;  // vacuous pass
    std::uint64_t* row = t.m.data() + k * n;
    std::uint64_t raw = 0;
    std::uint64_t pass_moves = 0;
    for (std::size_t pos = h; pos < n; ++pos) {
      const Value x = a[pos];
      std::size_t j = pos;
      std::uint64_t shifts = 0;
      while (j >= h) {
        ++raw;
        if (a[j - h] < x) break;
        a[j] = a[j - h];
        j -= h;
        ++shifts;
      }
      a[j] = x;
      row[x - 1] = shifts;
      pass_moves += shifts;
    }
    std::uint64_t inv = 0;
    for (std::size_t i = 0; i < n; ++i) inv += row[i];
    t.per_pass_inversions[k] = inv;
    t.comparisons[k] = inv + n;
    t.raw_comparisons[k] = raw;
    t.moves += pass_moves;
    t.total_M += inv;
  }
  return t;
}

inline ShellsortResult shellsort_traced(const Permutation& pi, const IncrementSequence& inc) {
  std::vector<Value> a(pi.values().begin(), pi.values().end());
  ShellTrace t = shellsort_in_place(a, inc);
  return {Permutation(std::move(a)), std::move(t)};
}

/// Raised when a counter sequence cannot come from any Shellsort run.
class TraceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Flat counter sequence in pass-major, value-minor order.
inline std::vector<std::uint64_t> trace_encode(const ShellTrace& trace) { return trace.m; }

/// Rebuilds the input permutation from its counters by undoing the passes
/// last to first. Each chain's pre-pass order is the arrangement of its
/// (sorted) values whose inversion counts are the chain's m entries.
inline Permutation trace_decode(std::span<const std::uint64_t> counters,
                                const IncrementSequence& inc, std::size_t n) {
  const std::size_t p = inc.passes();
  if (n == 0) throw TraceError("trace_decode: n must be at least 1");
  if (counters.size() != n * p)
    throw TraceError("trace_decode: expected " + std::to_string(n * p) + " counters, got " +
                     std::to_string(counters.size()));

  std::vector<Value> list(n);
  for (std::size_t i = 0; i < n; ++i) list[i] = static_cast<Value>(i + 1);

  std::vector<Value> chain;
  std::vector<std::uint64_t> counts;
  for (std::size_t k = p; k-- > 0;) {
    const std::size_t h = inc[k];
    const auto row = counters.subspan(k * n, n);
    if (h >= n) {
      for (auto c : row)
        if (c != 0) throw TraceError("trace_decode: nonzero counter in vacuous pass " + std::to_string(k + 1));
      continue;
    }
    for (std::size_t r = 0; r < h; ++r) {
      chain.clear();
      counts.clear();
      for (std::size_t pos = r; pos < n; pos += h) {
        if (!chain.empty() && chain.back() > list[pos])
          throw TraceError("trace_decode: list after pass " + std::to_string(k + 1) +
                           " is not " + std::to_string(h) + "-sorted; trace is unreachable");
        chain.push_back(list[pos]);
        counts.push_back(row[list[pos] - 1]);
      }
      std::vector<Value> before;
      try {
        before = arrange_by_inversion_counts(chain, counts);
      } catch (const std::invalid_argument& e) {
        throw TraceError(std::string("trace_decode: pass ") + std::to_string(k + 1) + ": " + e.what());
      }
      std::size_t idx = 0;
      for (std::size_t pos = r; pos < n; pos += h) list[pos] = before[idx++];
    }
  }
  return Permutation(std::move(list));
}

}  // namespace shellab
