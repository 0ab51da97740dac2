#include <gtest/gtest.h>

#include "oracles.hpp"
#include "shellab/io.hpp"
#include "shellab/shellsort.hpp"

using namespace shellab;
using H = std::vector<std::size_t>;

namespace {

oracle::Perm vec(const Permutation& p) { return {p.values().begin(), p.values().end()}; }

}  // namespace

TEST(ShellsortTraced, IdentityHasNoInversions) {
  const auto r = shellsort_traced(Permutation::identity(50), gen_pratt(50));
  EXPECT_TRUE(r.sorted.is_identity());
  EXPECT_EQ(r.trace.total_M, 0u);
  for (auto v : r.trace.m) EXPECT_EQ(v, 0u);
}

TEST(ShellsortTraced, SinglePassExample) {
  const auto r = shellsort_traced(Permutation({3, 1, 2}), IncrementSequence(H{1}));
  EXPECT_EQ(r.trace.at(1, 0), 1u);
  EXPECT_EQ(r.trace.at(2, 0), 1u);
  EXPECT_EQ(r.trace.at(3, 0), 0u);
  EXPECT_EQ(r.trace.total_M, 2u);
  EXPECT_EQ(r.trace.comparisons[0], 5u);
}

TEST(ShellsortTraced, TwoPassHandExample) {
  // (4,3,2,1) with (2,1): chains (4,2) and (3,1) give m[2,1] = m[1,1] = 1;
  // the list becomes (2,1,4,3), then m[1,2] = m[3,2] = 1.
  const Permutation pi({4, 3, 2, 1});
  const auto r = shellsort_traced(pi, IncrementSequence(H{2, 1}));
  EXPECT_EQ(r.trace.pass(0)[0], 1u);
  EXPECT_EQ(r.trace.pass(0)[1], 1u);
  EXPECT_EQ(r.trace.pass(0)[2], 0u);
  EXPECT_EQ(r.trace.pass(0)[3], 0u);
  EXPECT_EQ(r.trace.pass(1)[0], 1u);
  EXPECT_EQ(r.trace.pass(1)[1], 0u);
  EXPECT_EQ(r.trace.pass(1)[2], 1u);
  EXPECT_EQ(r.trace.pass(1)[3], 0u);
  EXPECT_EQ(r.trace.total_M, 4u);

  const auto def = oracle::shellsort_by_definition(vec(pi), {2, 1});
  EXPECT_EQ(def.m[0], (std::vector<std::uint64_t>{1, 1, 0, 0}));
  EXPECT_EQ(def.m[1], (std::vector<std::uint64_t>{1, 0, 1, 0}));
  EXPECT_EQ(def.exchanges, 4u);
}

TEST(ShellsortTraced, AgreesWithDefinitionOracle) {
  const std::vector<H> incs{{1}, {2, 1}, {3, 2, 1}, {5, 3, 1}, {7, 4, 2, 1}};
  for (std::size_t n = 1; n <= 7; ++n)
    for (const auto& h : incs)
      oracle::for_each_permutation(n, [&](const oracle::Perm& v) {
        const auto r = shellsort_traced(Permutation(v), IncrementSequence(h));
        const auto def = oracle::shellsort_by_definition(v, h);
        ASSERT_TRUE(r.sorted.is_identity());
        for (std::size_t k = 0; k < h.size(); ++k) {
          const auto row = r.trace.pass(k);
          ASSERT_EQ(std::vector<std::uint64_t>(row.begin(), row.end()), def.m[k]);
        }
        ASSERT_EQ(r.trace.total_M, def.exchanges);
      });
}

TEST(ShellsortTraced, TraceInvariantsOnRandomInputs) {
  const std::vector<std::size_t> sizes{2, 17, 100, 1000, 4096};
  std::uint64_t t = 0;
  for (auto n : sizes)
    for (const auto& inc : {gen_shell_original(n), gen_pratt(n), gen_geometric(n, 2.2), target_pass_count(n, 1)}) {
      const auto pi = random_permutation(n, {31, t++});
      const auto r = shellsort_traced(pi, inc);
      ASSERT_TRUE(r.sorted.is_identity());
      const auto& tr = r.trace;
      std::uint64_t total = 0;
      for (std::size_t k = 0; k < tr.passes(); ++k) {
        std::uint64_t s = 0;
        const std::uint64_t chain_bound = (n + inc[k] - 1) / inc[k] - 1;
        for (auto v : tr.pass(k)) {
          s += v;
          ASSERT_LE(v, chain_bound);
        }
        ASSERT_EQ(tr.per_pass_inversions[k], s);
        ASSERT_EQ(tr.comparisons[k], s + n);
        ASSERT_GE(tr.raw_comparisons[k], s);
        total += s;
      }
      ASSERT_EQ(tr.total_M, total);
      ASSERT_EQ(tr.moves, total);  // shifts counted independently in the loop
      if (inc.passes() == 1) {
        ASSERT_EQ(tr.total_M, count_inversions(pi));
      }
    }
}

TEST(ShellsortTraced, VacuousPassesAreZeroCost) {
  const auto r = shellsort_traced(Permutation({3, 1, 2}), IncrementSequence(H{5, 3, 1}));
  EXPECT_TRUE(r.sorted.is_identity());
  EXPECT_EQ(r.trace.per_pass_inversions[0], 0u);
  EXPECT_EQ(r.trace.per_pass_inversions[1], 0u);
  EXPECT_EQ(r.trace.comparisons[0], 0u);
  EXPECT_EQ(r.trace.comparisons[1], 0u);
  EXPECT_EQ(r.trace.m.size(), 9u);
  EXPECT_EQ(r.trace.total_M, 2u);
}

TEST(ShellsortTraced, SinglePassDominatesOnAverage) {
  // Reported rather than asserted per input: presorting passes reduce the
  // final pass's work, so the single pass should have the largest mean.
  constexpr std::size_t n = 512;
  const std::vector<IncrementSequence> incs{gen_shell_original(n), gen_pratt(n), target_pass_count(n, 2),
                                            target_pass_count(n, 3), gen_geometric(n, 2.2)};
  double single = 0;
  std::vector<double> other(incs.size(), 0);
  int dominated = 0, total = 0;
  for (std::uint64_t t = 0; t < 50; ++t) {
    const auto pi = random_permutation(n, {8, t});
    const auto base = shellsort_traced(pi, IncrementSequence(H{1})).trace.total_M;
    single += double(base);
    for (std::size_t i = 0; i < incs.size(); ++i) {
      const auto m = shellsort_traced(pi, incs[i]).trace.total_M;
      other[i] += double(m);
      dominated += base >= m;
      ++total;
    }
  }
  for (std::size_t i = 0; i < incs.size(); ++i) EXPECT_GT(single, other[i]) << incs[i].to_string();
  std::cout << "single pass total_M >= multi-pass total_M in " << dominated << " of " << total << " cases\n";
}

TEST(TraceCodec, AllZeroCountersDecodeToIdentity) {
  for (const auto& h : {H{1}, H{2, 1}, H{3, 2, 1}}) {
    const IncrementSequence inc(h);
    EXPECT_TRUE(trace_decode(std::vector<std::uint64_t>(6 * h.size(), 0), inc, 6).is_identity());
  }
}

TEST(TraceCodec, RoundTripExhaustiveSmall) {
  for (const auto& h : {H{1}, H{2, 1}, H{3, 2, 1}})
    for (std::size_t n = 1; n <= 7; ++n)
      oracle::for_each_permutation(n, [&](const oracle::Perm& v) {
        const Permutation pi(v);
        const IncrementSequence inc(h);
        ASSERT_EQ(trace_decode(trace_encode(shellsort_traced(pi, inc).trace), inc, n), pi) << pi.to_string();
      });
}

TEST(TraceCodec, RoundTripRandomPratt) {
  const auto inc = gen_pratt(1000);
  for (std::uint64_t t = 0; t < 100; ++t) {
    const auto pi = random_permutation(1000, {1000, t});
    ASSERT_EQ(trace_decode(trace_encode(shellsort_traced(pi, inc).trace), inc, 1000), pi);
  }
}

TEST(TraceCodec, RejectsCorruptCounters) {
  const IncrementSequence inc(H{2, 1});
  const auto pi = Permutation({4, 3, 2, 1});
  auto c = trace_encode(shellsort_traced(pi, inc).trace);

  auto too_big = c;
  too_big[4 + 3] = 1;  // value 4 in the last pass has no larger element
  EXPECT_THROW(trace_decode(too_big, inc, 4), TraceError);

  auto wrong_size = c;
  wrong_size.pop_back();
  EXPECT_THROW(trace_decode(wrong_size, inc, 4), TraceError);

  // Within chain bounds but not produced by any run: the last pass implies a
  // pre-pass list that is not 2-sorted.
  std::vector<std::uint64_t> unreachable(8, 0);
  unreachable[4 + 0] = 2;  // value 1 behind two larger values before the final pass
  EXPECT_THROW(trace_decode(unreachable, inc, 4), TraceError);

  auto vacuous = std::vector<std::uint64_t>(9, 0);
  vacuous[1] = 1;
  EXPECT_THROW(trace_decode(vacuous, IncrementSequence(H{5, 2, 1}), 3), TraceError);
}

TEST(TraceJson, FieldsAndCounters) {
  const IncrementSequence inc(H{2, 1});
  const auto r = shellsort_traced(Permutation({4, 3, 2, 1}), inc);
  const auto j = trace_to_json(r.trace);
  EXPECT_EQ(j.at("n"), 4);
  EXPECT_EQ(j.at("p"), 2);
  EXPECT_EQ(j.at("increments"), Json::parse("[2,1]"));
  EXPECT_EQ(j.at("m"), Json::parse("[[1,1,0,0],[1,0,1,0]]"));
  EXPECT_EQ(j.at("totals").at("total_M"), 4);
  const auto counters = counters_from_json(Json::parse(j.dump()));
  EXPECT_EQ(trace_decode(counters, inc, 4), Permutation({4, 3, 2, 1}));
}
