#pragma once

// Numeric side of the counting argument (log D(M), the log n! - 4 log n
// threshold, the smallest admissible inversion total) and the statistics
// used to confront it with measured trials. All logs returned are base 2.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "permutation.hpp"
#include "trial.hpp"

namespace shellab {

inline double log2_factorial(std::uint64_t n) {
  return std::lgamma(static_cast<double>(n) + 1.0) / std::numbers::ln2;
}

/// log2 C(a, b) by log-gamma.
inline double log2_binomial(double a, double b) {
  if (b < 0 || b > a) return -std::numeric_limits<double>::infinity();
  return (std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0)) / std::numbers::ln2;
}

/// Second-order entropy expansion of log2 C(a, b):
///   b log(a/b) + (a-b) log(a/(a-b)) + 1/2 log(a/(b(a-b))) - 1/2 log(2 pi).
/// Defined for 0 < b < a.
inline double log2_binomial_expansion(double a, double b) {
  if (!(b > 0 && b < a)) throw std::invalid_argument("log2_binomial_expansion: need 0 < b < a");
  const double c = a - b;
  return b * std::log2(a / b) + c * std::log2(a / c) + 0.5 * std::log2(a / (b * c)) -
         0.5 * std::log2(2.0 * std::numbers::pi);
}

/// log2 of the number of ways to write M as an ordered sum of `parts`
/// nonnegative integers, C(M + parts - 1, parts - 1).
inline double log_divisions(std::uint64_t M, std::uint64_t parts) {
  if (parts == 0) throw std::invalid_argument("log_divisions: parts must be at least 1");
  if (M == 0 || parts == 1) return 0.0;
  const double m = static_cast<double>(M);
  const double q = static_cast<double>(parts);
  return (std::lgamma(m + q) - std::lgamma(q) - std::lgamma(m + 1.0)) / std::numbers::ln2;
}

struct BoundQuery {
  std::uint64_t n;
  std::uint64_t p;

  BoundQuery(std::uint64_t n_, std::uint64_t p_) : n(n_), p(p_) {
    if (p < 1 || p >= n) throw std::invalid_argument("bound query: need 1 <= p < n");
  }
};

/// log2 n! - 4 log2 n.
inline double inversion_threshold_bits(std::uint64_t n) {
  return log2_factorial(n) - 4.0 * std::log2(static_cast<double>(n));
}

/// Smallest M in [0, p n^2] with log_divisions(M, n p) >= log2 n! - 4 log2 n.
/// If even p n^2 falls short, returns p n^2.
inline std::uint64_t inversion_lower_bound(const BoundQuery& q) {
  const double threshold = inversion_threshold_bits(q.n);
  const std::uint64_t parts = q.n * q.p;
  std::uint64_t lo = 0;
  std::uint64_t hi = q.p * q.n * q.n;
  if (threshold <= 0.0) return 0;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (log_divisions(mid, parts) >= threshold)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

/// M* / (p n^(1 + 1/p)).
inline double bound_ratio(const BoundQuery& q, std::uint64_t m_star) {
  const double n = static_cast<double>(q.n);
  const double p = static_cast<double>(q.p);
  return static_cast<double>(m_star) / (p * std::pow(n, 1.0 + 1.0 / p));
}

// ---------------------------------------------------------------------------
// Power-law fitting
// ---------------------------------------------------------------------------

struct FitPoint {
  double n = 0;
  double mean = 0;
  double std_error = 0;
  std::uint64_t trials = 0;
};

struct FitResult {
  double exponent = 0;
  double constant = 0;
  double r_squared = 0;
  std::vector<FitPoint> points;    // used in the fit
  std::vector<FitPoint> rejected;  // nonpositive n or mean
};

/// Ordinary least squares of log(mean) on log(n): mean ~ constant * n^exponent.
inline FitResult fit_power_law(std::span<const FitPoint> points) {
  FitResult fit;
  for (const auto& pt : points) {
    if (pt.n > 0 && pt.mean > 0)
      fit.points.push_back(pt);
    else
      fit.rejected.push_back(pt);
  }
  std::vector<double> xs;
  for (const auto& pt : fit.points) xs.push_back(pt.n);
  std::sort(xs.begin(), xs.end());
  if (std::unique(xs.begin(), xs.end()) - xs.begin() < 3)
    throw std::invalid_argument("fit_power_law: need at least 3 distinct n with positive means");

  const double k = static_cast<double>(fit.points.size());
  double sx = 0, sy = 0;
  for (const auto& pt : fit.points) {
    sx += std::log(pt.n);
    sy += std::log(pt.mean);
  }
  const double mx = sx / k, my = sy / k;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& pt : fit.points) {
    const double dx = std::log(pt.n) - mx, dy = std::log(pt.mean) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  fit.constant = std::exp(intercept);
  double ss_res = 0;
  for (const auto& pt : fit.points) {
    const double r = std::log(pt.mean) - (intercept + fit.exponent * std::log(pt.n));
    ss_res += r * r;
  }
  fit.r_squared = syy > 0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

inline FitResult fit_power_law(std::span<const std::pair<double, double>> n_mean) {
  std::vector<FitPoint> pts;
  for (const auto& [n, mean] : n_mean) pts.push_back({n, mean, 0.0, 0});
  return fit_power_law(std::span<const FitPoint>(pts));
}

// ---------------------------------------------------------------------------
// Streaming summary statistics
// ---------------------------------------------------------------------------

/// Welford accumulator; merge() combines partial results (Chan et al.).
class RunningStats {
 public:
  void add(double x) noexcept {
    ++count_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(count_);
    m2_ += d * (x - mean_);
    min_ = std::min(min_, x);
    max_ = std::max(max_, x);
  }

  void merge(const RunningStats& o) noexcept {
    if (o.count_ == 0) return;
    if (count_ == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(count_), nb = static_cast<double>(o.count_);
    const double d = o.mean_ - mean_;
    const double total = na + nb;
    mean_ += d * nb / total;
    m2_ += o.m2_ + d * d * na * nb / total;
    count_ += o.count_;
    min_ = std::min(min_, o.min_);
    max_ = std::max(max_, o.max_);
  }

  std::uint64_t count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }
  double min() const noexcept { return min_; }
  double max() const noexcept { return max_; }
  /// Sample variance; undefined below two samples.
  std::optional<double> variance() const noexcept {
    if (count_ < 2) return std::nullopt;
    return m2_ / static_cast<double>(count_ - 1);
  }
  std::optional<double> std_error_of_mean() const noexcept {
    auto v = variance();
    if (!v) return std::nullopt;
    return std::sqrt(*v / static_cast<double>(count_));
  }

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0;
  double m2_ = 0;
  double min_ = std::numeric_limits<double>::infinity();
  double max_ = -std::numeric_limits<double>::infinity();
};

struct TrialSummary {
  TrialKey key;
  RunningStats stats;
};

/// Groups records by (experiment, n, p, family) and accumulates each group's
/// primary metric. Groups come back in key order.
inline std::vector<TrialSummary> summarize_trials(std::span<const TrialRecord> records) {
  if (records.empty()) throw std::invalid_argument("summarize_trials: no records");
  std::map<TrialKey, RunningStats> groups;
  for (const auto& r : records) groups[r.key()].add(r.primary_metric());
  std::vector<TrialSummary> out;
  out.reserve(groups.size());
  for (auto& [k, s] : groups) out.push_back({k, s});
  return out;
}

// ---------------------------------------------------------------------------
// LIS versus e sqrt(n)
// ---------------------------------------------------------------------------

struct LisBoundReport {
  std::size_t n = 0;
  std::uint64_t trials = 0;
  double mean_lis = 0;
  std::size_t max_lis = 0;
  double ratio_mean_to_sqrt_n = 0;
  double e_sqrt_n = 0;
  double fraction_above_e_sqrt_n = 0;
};

inline LisBoundReport lis_bound_check(std::size_t n, std::uint64_t trials, std::uint64_t master_seed) {
  if (n < 4) throw std::invalid_argument("lis_bound_check: n must be at least 4");
  if (trials == 0) throw std::invalid_argument("lis_bound_check: trials must be at least 1");
  LisBoundReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.e_sqrt_n = std::numbers::e * std::sqrt(static_cast<double>(n));
  RunningStats stats;
  std::uint64_t above = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto pi = random_permutation(n, Seed{master_seed, t});
    const std::size_t len = longest_increasing_subsequence(pi).length;
    stats.add(static_cast<double>(len));
    rep.max_lis = std::max(rep.max_lis, len);
    if (static_cast<double>(len) > rep.e_sqrt_n) ++above;
  }
  rep.mean_lis = stats.mean();
  rep.ratio_mean_to_sqrt_n = rep.mean_lis / std::sqrt(static_cast<double>(n));
  rep.fraction_above_e_sqrt_n = static_cast<double>(above) / static_cast<double>(trials);
  return rep;
}

}  // namespace shellab
