#pragma once

// Permutations of 1..n, seeded generation, and the combinatorial routines
// (inversions, longest monotone subsequences, inversion tables) that the
// rest of the library is checked against.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace shellab {

using Value = std::uint32_t;

/// A bijective arrangement of the values 1..n, n >= 1.
class Permutation {
 public:
  explicit Permutation(std::vector<Value> values) : values_(std::move(values)) {
    validate(values_);
  }

  static Permutation identity(std::size_t n) {
    std::vector<Value> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Value>(i + 1);
    return Permutation(std::move(v));
  }

  static Permutation reversed(std::size_t n) {
    std::vector<Value> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Value>(n - i);
    return Permutation(std::move(v));
  }

  std::size_t size() const noexcept { return values_.size(); }
  Value operator[](std::size_t pos) const noexcept { return values_[pos]; }
  std::span<const Value> values() const noexcept { return values_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (values_[i] != i + 1) return false;
    return true;
  }

  /// Maps v to n + 1 - v.
  Permutation complement() const {
    std::vector<Value> v(values_.size());
    const auto n1 = static_cast<Value>(values_.size() + 1);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = n1 - values_[i];
    return Permutation(std::move(v));
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(values_[i]);
    }
    return s + ')';
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  static void validate(const std::vector<Value>& v) {
    if (v.empty()) throw std::invalid_argument("permutation: size must be at least 1");
    std::vector<bool> seen(v.size() + 1, false);
    for (Value x : v) {
      if (x < 1 || x > v.size() || seen[x])
        throw std::invalid_argument("permutation: values must be 1..n, each exactly once");
      seen[x] = true;
    }
  }

  std::vector<Value> values_;
};

// ---------------------------------------------------------------------------
// Deterministic randomness
// ---------------------------------------------------------------------------

/// SplitMix64 (Steele, Lea, Flood 2014). One 64-bit state word, full period.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  constexpr result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound), bound > 0. Lemire's multiply-shift with
  /// the threshold rejection that makes it exact.
  std::uint64_t below(std::uint64_t bound) noexcept {
    unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t state_;
};

struct Seed {
  std::uint64_t master = 0;
  std::uint64_t trial_index = 0;

  /// Per-trial stream seed: mix(master + mix(trial_index + golden)).
  constexpr std::uint64_t derived() const noexcept {
    return SplitMix64::mix(master + SplitMix64::mix(trial_index + 0x9e3779b97f4a7c15ULL));
  }
};

/// Fisher-Yates over 1..n driven by SplitMix64(stream_seed).
inline Permutation random_permutation_from_stream(std::size_t n, std::uint64_t stream_seed) {
  if (n == 0) throw std::invalid_argument("random_permutation: n must be at least 1");
  std::vector<Value> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Value>(i + 1);
  SplitMix64 rng(stream_seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(v[i], v[j]);
  }
  return Permutation(std::move(v));
}

inline Permutation random_permutation(std::size_t n, Seed seed) {
  return random_permutation_from_stream(n, seed.derived());
}

/// The index-th permutation of 1..n in lexicographic order (index < n!).
inline Permutation nth_permutation(std::size_t n, std::uint64_t index) {
  if (n == 0 || n > 20) throw std::invalid_argument("nth_permutation: n must be in 1..20");
  std::vector<std::uint64_t> fact(n, 1);
  for (std::size_t i = 1; i < n; ++i) fact[i] = fact[i - 1] * i;
  if (index / fact[n - 1] >= n) throw std::invalid_argument("nth_permutation: index out of range");
  std::vector<Value> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<Value>(i + 1);
  std::vector<Value> out;
  out.reserve(n);
  for (std::size_t i = n; i > 0; --i) {
    const auto digit = static_cast<std::size_t>(index / fact[i - 1]);
    index %= fact[i - 1];
    out.push_back(pool[digit]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return Permutation(std::move(out));
}

// ---------------------------------------------------------------------------
// Inversions
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t merge_count(std::span<Value> a, std::span<Value> buf) {
  const std::size_t n = a.size();
  if (n < 2) return 0;
  const std::size_t mid = n / 2;
  std::uint64_t count = merge_count(a.first(mid), buf.first(mid)) +
                        merge_count(a.subspan(mid), buf.subspan(mid));
  std::size_t i = 0, j = mid, k = 0;
  while (i < mid && j < n) {
    if (a[i] < a[j]) {
      buf[k++] = a[i++];
    } else {
      count += mid - i;
      buf[k++] = a[j++];
    }
  }
  while (i < mid) buf[k++] = a[i++];
  while (j < n) buf[k++] = a[j++];
  std::copy(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(n), a.begin());
  return count;
}

}  // namespace detail

/// Number of position pairs a < b with pi[a] > pi[b], by merge counting.
inline std::uint64_t count_inversions(const Permutation& pi) {
  std::vector<Value> a(pi.values().begin(), pi.values().end());
  std::vector<Value> buf(a.size());
  return detail::merge_count(a, buf);
}

// ---------------------------------------------------------------------------
// Longest monotone subsequences
// ---------------------------------------------------------------------------

struct Subsequence {
  std::size_t length = 0;
  std::vector<std::size_t> positions;  // 0-based, ascending
};

/// Patience sorting with predecessor links; O(n log n).
inline Subsequence longest_increasing_subsequence(std::span<const Value> x) {
  constexpr auto none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> tail_pos;  // position of the smallest tail of each length
  std::vector<std::size_t> pred(x.size(), none);
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto it = std::lower_bound(tail_pos.begin(), tail_pos.end(), x[i],
                               [&](std::size_t p, Value v) { return x[p] < v; });
    if (it != tail_pos.begin()) pred[i] = *std::prev(it);
    if (it == tail_pos.end())
      tail_pos.push_back(i);
    else
      *it = i;
  }
  Subsequence out;
  out.length = tail_pos.size();
  out.positions.resize(out.length);
  std::size_t cur = tail_pos.empty() ? none : tail_pos.back();
  for (std::size_t k = out.length; k > 0; --k) {
    out.positions[k - 1] = cur;
    cur = pred[cur];
  }
  return out;
}

inline Subsequence longest_increasing_subsequence(const Permutation& pi) {
  return longest_increasing_subsequence(pi.values());
}

/// LIS of the value complement; positions refer to pi itself.
inline Subsequence longest_decreasing_subsequence(const Permutation& pi) {
  return longest_increasing_subsequence(pi.complement());
}

// ---------------------------------------------------------------------------
// Inversion tables
// ---------------------------------------------------------------------------

/// counts[v - 1] = number of values larger than v that precede v.
struct InversionTable {
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const noexcept {
    std::uint64_t s = 0;
    for (auto c : counts) s += c;
    return s;
  }
  friend bool operator==(const InversionTable&, const InversionTable&) = default;
};

inline InversionTable inversion_table_encode(const Permutation& pi) {
  // Fenwick tree over values: how many larger values have been seen so far.
  const std::size_t n = pi.size();
  std::vector<std::uint32_t> tree(n + 1, 0);
  InversionTable t;
  t.counts.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Value v = pi[i];
    std::uint64_t not_larger = 0;
    for (std::size_t k = v; k > 0; k -= k & (~k + 1)) not_larger += tree[k];
    t.counts[v - 1] = i - not_larger;
    for (std::size_t k = v; k <= n; k += k & (~k + 1)) ++tree[k];
  }
  return t;
}

/// Orders `sorted_values` (ascending, distinct) so that each value is preceded
/// by exactly counts[j] larger values, counts[j] belonging to sorted_values[j].
/// Values are inserted largest first. Throws if some count exceeds the number
/// of larger values available.
inline std::vector<Value> arrange_by_inversion_counts(std::span<const Value> sorted_values,
                                                      std::span<const std::uint64_t> counts) {
  if (counts.size() != sorted_values.size())
    throw std::invalid_argument("inversion table: size mismatch");
  std::vector<Value> out;
  out.reserve(sorted_values.size());
  for (std::size_t j = sorted_values.size(); j > 0; --j) {
    const std::uint64_t c = counts[j - 1];
    if (c > out.size())
      throw std::invalid_argument("inversion table: count for value " +
                                  std::to_string(sorted_values[j - 1]) + " exceeds " +
                                  std::to_string(out.size()) + " larger values");
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(c), sorted_values[j - 1]);
  }
  return out;
}

inline Permutation inversion_table_decode(const InversionTable& t, std::size_t n) {
  if (n == 0 || t.counts.size() != n)
    throw std::invalid_argument("inversion table: expected " + std::to_string(n) + " counts");
  std::vector<Value> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = static_cast<Value>(i + 1);
  return Permutation(arrange_by_inversion_counts(values, t.counts));
}

}  // namespace shellab
