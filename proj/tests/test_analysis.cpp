#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "shellab/analysis.hpp"

using namespace shellab;

namespace {

// log2 C(M + q - 1, q - 1) as a running product, no gamma functions.
double log_divisions_by_product(std::uint64_t M, std::uint64_t q) {
  double s = 0;
  for (std::uint64_t i = 1; i < q; ++i) s += std::log2(double(M + i) / double(i));
  return s;
}

double threshold_by_sum(std::uint64_t n) {
  double s = 0;
  for (std::uint64_t i = 2; i <= n; ++i) s += std::log2(double(i));
  return s - 4 * std::log2(double(n));
}

TrialRecord shell_record(std::size_t n, std::uint64_t total, std::uint64_t t = 0) {
  TrialRecord r;
  r.n = n;
  r.p = 1;
  r.family = "shell";
  r.trial_index = t;
  r.metrics.total_M = total;
  return r;
}

}  // namespace

TEST(LogDivisions, SmallValues) {
  EXPECT_EQ(log_divisions(0, 5), 0.0);
  EXPECT_EQ(log_divisions(17, 1), 0.0);
  EXPECT_NEAR(log_divisions(2, 2), std::log2(3.0), 1e-12);
  EXPECT_NEAR(log_divisions(3, 3), std::log2(10.0), 1e-12);
  EXPECT_THROW(log_divisions(3, 0), std::invalid_argument);
}

TEST(LogDivisions, MatchesEnumerationUpToTwelve) {
  for (std::uint64_t M = 0; M <= 12; ++M)
    for (std::uint64_t q = 1; q <= 6; ++q) {
      const auto count = oracle::enumerate_compositions(M, q);
      ASSERT_NEAR(log_divisions(M, q), std::log2(double(count)), 1e-9) << M << "," << q;
    }
}

TEST(LogDivisions, MonotoneInM) {
  for (std::uint64_t q : {2u, 10u, 1000u}) {
    double prev = -1;
    for (std::uint64_t M = 0; M < 5000; M += 7) {
      const double v = log_divisions(M, q);
      ASSERT_GT(v, prev);
      prev = v;
    }
  }
}

TEST(LogDivisions, AgreesWithProductFormLarge) {
  for (std::uint64_t M : {100u, 10000u, 1000000u})
    for (std::uint64_t q : {2u, 64u, 2048u}) {
      const double ref = log_divisions_by_product(M, q);
      EXPECT_NEAR(log_divisions(M, q), ref, 1e-9 * std::max(1.0, ref));
    }
}

TEST(Threshold, MatchesDirectSum) {
  for (std::uint64_t n : {4u, 16u, 256u, 4096u}) EXPECT_NEAR(inversion_threshold_bits(n), threshold_by_sum(n), 1e-6);
}

TEST(InversionLowerBound, LinearScanOracleSmallN) {
  for (std::uint64_t n : {8u, 12u, 20u})
    for (std::uint64_t p = 1; p < std::min<std::uint64_t>(n, 6); ++p) {
      const double thr = threshold_by_sum(n);
      std::uint64_t m = 0;
      while (log_divisions_by_product(m, n * p) < thr) ++m;
      EXPECT_EQ(inversion_lower_bound({n, p}), m) << n << "," << p;
    }
}

TEST(InversionLowerBound, ReferenceValues) {
  EXPECT_EQ(inversion_lower_bound({256, 1}), 8359u);
  EXPECT_EQ(inversion_lower_bound({256, 2}), 1532u);
  EXPECT_EQ(inversion_lower_bound({256, 3}), 899u);
  EXPECT_EQ(inversion_lower_bound({256, 8}), 434u);
}

TEST(InversionLowerBound, DecreasingInPAndRatioBounded) {
  for (std::uint64_t e : {8u, 10u, 12u, 14u}) {
    const std::uint64_t n = std::uint64_t{1} << e;
    std::uint64_t prev = std::uint64_t(-1);
    for (std::uint64_t p = 1; p <= e; ++p) {
      const auto m = inversion_lower_bound({n, p});
      EXPECT_LE(m, prev);
      prev = m;
      const double ratio = bound_ratio({n, p}, m);
      EXPECT_GT(ratio, 0.05) << n << "," << p;
      EXPECT_LT(ratio, 1.0) << n << "," << p;
    }
    // p = 1 is quadratic: a fixed fraction of n^2.
    const double q = double(inversion_lower_bound({n, 1})) / double(n * n);
    EXPECT_GT(q, 0.1);
    EXPECT_LT(q, 0.25);
  }
}

TEST(InversionLowerBound, RejectsBadQueries) {
  EXPECT_THROW(BoundQuery(8, 0), std::invalid_argument);
  EXPECT_THROW(BoundQuery(8, 8), std::invalid_argument);
  EXPECT_NO_THROW(BoundQuery(8, 7));
}

TEST(BinomialExpansion, CloseToExactForLargeArguments) {
  for (double a : {1e3, 1e4, 1e6})
    for (double frac : {0.01, 0.1, 0.5, 0.9}) {
      const double b = std::round(a * frac);
      if (std::min(b, a - b) < 10) continue;
      const double exact = log2_binomial(a, b);
      EXPECT_NEAR(log2_binomial_expansion(a, b), exact, 1e-3 * exact) << a << "," << b;
    }
  EXPECT_THROW(log2_binomial_expansion(10, 0), std::invalid_argument);
  EXPECT_THROW(log2_binomial_expansion(10, 10), std::invalid_argument);
}

TEST(FitPowerLaw, RecoversExactPowerLaw) {
  std::vector<FitPoint> pts;
  for (double n : {64.0, 256.0, 1024.0, 4096.0}) pts.push_back({n, 7 * std::pow(n, 1.5), 0, 0});
  const auto f = fit_power_law(pts);
  EXPECT_NEAR(f.exponent, 1.5, 1e-9);
  EXPECT_NEAR(f.constant, 7.0, 1e-6);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
}

TEST(FitPowerLaw, ConstantDataHasZeroExponent) {
  const std::vector<std::pair<double, double>> pts{{10, 3}, {100, 3}, {1000, 3}};
  EXPECT_NEAR(fit_power_law(std::span<const std::pair<double, double>>(pts)).exponent, 0.0, 1e-12);
}

TEST(FitPowerLaw, RejectsNonPositiveAndTooFewPoints) {
  std::vector<FitPoint> pts{{10, 100, 0, 0}, {100, 10000, 0, 0}, {1000, 0, 0, 0}, {0, 5, 0, 0}, {1e4, 1e8, 0, 0}};
  const auto f = fit_power_law(pts);
  EXPECT_EQ(f.rejected.size(), 2u);
  EXPECT_EQ(f.points.size(), 3u);
  EXPECT_NEAR(f.exponent, 2.0, 1e-9);
  std::vector<FitPoint> two{{10, 1, 0, 0}, {100, 2, 0, 0}, {100, 3, 0, 0}};
  EXPECT_THROW(fit_power_law(two), std::invalid_argument);
}

TEST(RunningStats, SmallCases) {
  RunningStats s;
  s.add(4);
  EXPECT_EQ(s.count(), 1u);
  EXPECT_EQ(s.mean(), 4);
  EXPECT_FALSE(s.variance());
  EXPECT_FALSE(s.std_error_of_mean());
  s.add(6);
  EXPECT_EQ(s.mean(), 5);
  EXPECT_NEAR(*s.variance(), 2.0, 1e-12);
  EXPECT_NEAR(*s.std_error_of_mean(), 1.0, 1e-12);
  EXPECT_EQ(s.min(), 4);
  EXPECT_EQ(s.max(), 6);
}

TEST(RunningStats, MergeEqualsSequential) {
  RunningStats all, a, b;
  SplitMix64 g(5);
  for (int i = 0; i < 1000; ++i) {
    const double x = double(g.below(1000)) / 7.0;
    all.add(x);
    (i % 3 ? a : b).add(x);
  }
  a.merge(b);
  EXPECT_EQ(a.count(), all.count());
  EXPECT_NEAR(a.mean(), all.mean(), 1e-9);
  EXPECT_NEAR(*a.variance(), *all.variance(), 1e-7);
  EXPECT_EQ(a.max(), all.max());
}

TEST(RunningStats, StandardErrorScalesWithRootN) {
  // +-1 with equal probability has unit variance.
  RunningStats s;
  SplitMix64 g(77);
  constexpr int N = 100000;
  for (int i = 0; i < N; ++i) s.add(g.below(2) ? 1.0 : -1.0);
  EXPECT_NEAR(*s.std_error_of_mean(), 1 / std::sqrt(double(N)), 0.05 / std::sqrt(double(N)));
}

TEST(SummarizeTrials, GroupsByKey) {
  std::vector<TrialRecord> recs{shell_record(8, 10, 0), shell_record(8, 14, 1), shell_record(16, 50, 0)};
  const auto sums = summarize_trials(recs);
  ASSERT_EQ(sums.size(), 2u);
  EXPECT_EQ(sums[0].key.n, 8u);
  EXPECT_EQ(sums[0].stats.mean(), 12.0);
  EXPECT_EQ(sums[1].stats.count(), 1u);
  EXPECT_FALSE(sums[1].stats.std_error_of_mean());
  EXPECT_THROW(summarize_trials(std::span<const TrialRecord>()), std::invalid_argument);
  TrialRecord empty;
  EXPECT_THROW(summarize_trials(std::vector<TrialRecord>{empty}), std::invalid_argument);
}

TEST(LisBoundCheck, MeanBelowESqrtN) {
  const auto r = lis_bound_check(2500, 200, 3);
  EXPECT_GT(r.ratio_mean_to_sqrt_n, 1.0);
  EXPECT_LT(r.ratio_mean_to_sqrt_n, std::numbers::e);
  EXPECT_EQ(r.fraction_above_e_sqrt_n, 0.0);
  EXPECT_LE(double(r.max_lis), r.e_sqrt_n);
  EXPECT_THROW(lis_bound_check(3, 10, 1), std::invalid_argument);
}
