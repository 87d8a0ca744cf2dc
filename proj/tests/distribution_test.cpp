#include "adderstats/distribution.hpp"

#include <algorithm>
#include <tuple>
#include <vector>

#include <gtest/gtest.h>

#include "adderstats/error_rate.hpp"
#include "adderstats/oracle.hpp"
#include "test_util.hpp"

namespace adderstats {
namespace {

BigInt magnitude_of(const std::vector<int>& ones, int k) {
  BigInt magnitude = 0;
  for (int i : ones) {
    magnitude += BigInt(1) << (i * k);
  }
  return magnitude;
}

TEST(PatternCount, ReferenceAdders) {
  EXPECT_EQ(count_patterns(validate_config(64, 4, 2)), 32768);
  EXPECT_EQ(count_patterns(validate_config(64, 4, 4)), 987);
  EXPECT_EQ(count_patterns(validate_config(64, 4, 8)), 189);
  EXPECT_EQ(count_patterns(validate_config(64, 4, 10)), 189);
}

TEST(PatternCount, SequencePrefix) {
  const auto x = pattern_count_sequence(validate_config(32, 4, 4));
  ASSERT_EQ(x.size(), 8u);
  EXPECT_EQ(x[0], 1);
  EXPECT_EQ(x[1], 1);
  EXPECT_EQ(x[2], 2);
  EXPECT_EQ(x[3], 3);
  EXPECT_EQ(x[4], 5);
  EXPECT_EQ(x[5], 8);
  EXPECT_EQ(x[6], 13);
  EXPECT_EQ(x[7], 21);
}

TEST(PatternCount, ExactAdderHasOnlyTheZeroPattern) {
  EXPECT_EQ(count_patterns(validate_config(8, 2, 6)), 1);
  EXPECT_EQ(count_patterns(validate_config(12, 4, 8)), 1);
}

TEST(Distribution, ExactAdderEnumeratesToTheZeroPattern) {
  const auto dist = enumerate_distribution<Dyadic>(validate_config(8, 2, 6));
  ASSERT_EQ(dist.patterns.size(), 1u);
  EXPECT_TRUE(dist.patterns[0].ones.empty());
  EXPECT_TRUE(dist.patterns[0].magnitude.is_zero());
  EXPECT_EQ(dist.patterns[0].probability, Dyadic::one());
}

TEST(Distribution, ThirtyTwoBitPatternListIsReproduced) {
  // All 20 non-zero patterns of the 8-block, t = 1 adder, by block index.
  const std::vector<std::vector<int>> expected_ones = {
      {7},       {6},       {5},       {7, 5},    {4},       {6, 4},    {7, 4},
      {3},       {5, 3},    {7, 5, 3}, {6, 3},    {7, 3},    {2},       {4, 2},
      {6, 4, 2}, {7, 4, 2}, {5, 2},    {7, 5, 2}, {6, 2},    {7, 2}};
  const AdderConfig cfg = validate_config(32, 4, 4);
  const auto dist = enumerate_distribution<Dyadic>(cfg);
  ASSERT_EQ(dist.patterns.size(), 21u);

  std::vector<BigInt> expected_magnitudes;
  expected_magnitudes.push_back(BigInt(0));
  for (const auto& ones : expected_ones) {
    expected_magnitudes.push_back(magnitude_of(ones, cfg.k));
  }
  std::sort(expected_magnitudes.begin(), expected_magnitudes.end());
  for (std::size_t i = 0; i < dist.patterns.size(); ++i) {
    EXPECT_EQ(dist.patterns[i].magnitude, expected_magnitudes[i]) << "i = " << i;
  }
}

TEST(Distribution, MatchesOracleExactly) {
  for (const auto& [n, k, l] : std::vector<std::tuple<int, int, int>>{
           {8, 2, 2}, {12, 2, 3}, {12, 4, 4}, {10, 2, 3}, {8, 1, 2}, {9, 3, 5}}) {
    EXPECT_TRUE(testutil::distribution_matches_oracle(validate_config(n, k, l)));
  }
}

TEST(Distribution, CountMatchesEnumerationAcrossSpans) {
  // m up to 20 across t = 0..4, k chosen to exercise both divisibility cases.
  for (const auto& [k, l] : std::vector<std::pair<int, int>>{
           {2, 1}, {1, 1}, {2, 3}, {1, 2}, {3, 7}, {2, 5}, {3, 2}, {2, 8}, {4, 9}}) {
    for (int m = 2; m <= 20; ++m) {
      const int n = m * k;
      if (l > n - k) {
        continue;
      }
      const AdderConfig cfg = validate_config(n, k, l);
      const BigInt predicted = count_patterns(cfg);
      std::uint64_t visited = 0;
      stream_distribution<double>(cfg, [&visited](const ErrorPattern<double>&) {
        ++visited;
      });
      ASSERT_EQ(predicted, visited) << "n=" << n << " k=" << k << " l=" << l;
    }
  }
}

TEST(Distribution, PatternsSatisfyTheGapAndRangeConstraints) {
  for (const auto& [n, k, l] : std::vector<std::tuple<int, int, int>>{
           {40, 2, 3}, {36, 3, 4}, {24, 1, 2}, {30, 2, 5}}) {
    const AdderConfig cfg = validate_config(n, k, l);
    const auto dist = enumerate_distribution<double>(cfg);
    EXPECT_EQ(BigInt(dist.patterns.size()), count_patterns(cfg));
    for (const auto& pattern : dist.patterns) {
      ASSERT_TRUE(std::is_sorted(pattern.ones.rbegin(), pattern.ones.rend()));
      for (std::size_t idx = 0; idx < pattern.ones.size(); ++idx) {
        ASSERT_GE(pattern.ones[idx], cfg.t + 1);
        ASSERT_LE(pattern.ones[idx], cfg.m - 1);
        if (idx + 1 < pattern.ones.size()) {
          ASSERT_GT(pattern.ones[idx] - pattern.ones[idx + 1], cfg.t);
        }
      }
      ASSERT_EQ(pattern.magnitude, magnitude_of(pattern.ones, cfg.k));
    }
  }
}

TEST(Distribution, ZeroPatternCarriesThePrefixCorrectProbability) {
  for (const auto& [n, k, l] : std::vector<std::tuple<int, int, int>>{
           {32, 4, 4}, {24, 2, 3}, {64, 4, 10}}) {
    const AdderConfig cfg = validate_config(n, k, l);
    const auto dist = enumerate_distribution<Dyadic>(cfg);
    const auto prefix = prefix_correct_probs<Dyadic>(cfg);
    ASSERT_TRUE(dist.patterns.front().magnitude.is_zero());
    EXPECT_EQ(dist.patterns.front().probability, prefix[cfg.m - 1]);
  }
}

TEST(Distribution, MassSumsToOne) {
  for (const auto& [n, k, l] : std::vector<std::tuple<int, int, int>>{
           {32, 4, 4}, {64, 4, 8}, {24, 2, 3}, {64, 4, 10}}) {
    const AdderConfig cfg = validate_config(n, k, l);
    Dyadic exact_mass;
    for (const auto& pattern : enumerate_distribution<Dyadic>(cfg).patterns) {
      exact_mass += pattern.probability;
    }
    EXPECT_EQ(exact_mass, Dyadic::one()) << "n=" << n << " k=" << k << " l=" << l;

    double float_mass = 0;
    for (const auto& pattern : enumerate_distribution<double>(cfg).patterns) {
      float_mass += pattern.probability;
    }
    EXPECT_NEAR(float_mass, 1.0, 1e-12);
  }
}

TEST(Distribution, StreamVisitsInDepthFirstPlaceFirstOrder) {
  // The traversal places a 1 before skipping, so the first pattern delivered
  // for the 8-block, t = 1 adder is the densest low pattern [6,4,2].
  const AdderConfig cfg = validate_config(32, 4, 4);
  std::vector<std::vector<int>> order;
  const auto summary = stream_distribution<Dyadic>(
      cfg, [&order](const ErrorPattern<Dyadic>& pattern) {
        order.push_back(pattern.ones);
      });
  ASSERT_EQ(summary.visited, 21u);
  EXPECT_EQ(summary.outcome, StreamOutcome::completed);
  EXPECT_EQ(summary.mass, Dyadic::one());
  EXPECT_EQ(order.front(), (std::vector<int>{6, 4, 2}));
  EXPECT_TRUE(order.back().empty());  // all-skip path finishes last
}

TEST(Distribution, StreamCountsTheLargestReferenceAdder) {
  std::uint64_t visited = 0;
  const auto summary = stream_distribution<double>(
      validate_config(64, 4, 2),
      [&visited](const ErrorPattern<double>&) { ++visited; });
  EXPECT_EQ(visited, 32768u);
  EXPECT_EQ(summary.visited, 32768u);
  EXPECT_NEAR(summary.mass, 1.0, 1e-12);
}

TEST(Distribution, StreamAbortIsAnOutcomeNotAnError) {
  const AdderConfig cfg = validate_config(32, 4, 4);
  std::uint64_t seen = 0;
  const auto summary =
      stream_distribution<double>(cfg, [&seen](const ErrorPattern<double>&) {
        return ++seen < 5;
      });
  EXPECT_EQ(summary.outcome, StreamOutcome::aborted);
  EXPECT_EQ(summary.visited, 5u);
  EXPECT_EQ(seen, 5u);
}

TEST(Distribution, EnumerationRefusesCountsBeyondTheCap) {
  const AdderConfig cfg = validate_config(64, 4, 2);  // 32768 patterns
  try {
    enumerate_distribution<double>(cfg, 1000);
    FAIL() << "expected PatternCapError";
  } catch (const PatternCapError& e) {
    EXPECT_EQ(e.predicted(), 32768);
    EXPECT_EQ(e.cap(), 1000u);
    EXPECT_NE(std::string(e.what()).find("stream_distribution"), std::string::npos);
  }
}

TEST(NextOneProb, BaseCaseDropsThePrefixFactor) {
  // Gap t+1 leaves no room between the generate event and the previous 1,
  // so the coefficient is propagate^t * generate.
  const AdderConfig cfg = validate_config(64, 4, 8);
  const auto sp = signal_probs<Dyadic>(cfg);
  const auto prefix = prefix_correct_probs(cfg, sp);
  const Dyadic base = next_one_prob(cfg, sp, prefix, cfg.t + 1, 0);
  const Dyadic expected =
      sp.block.propagate * sp.block.propagate * sp.block.generate;
  EXPECT_EQ(base, expected);
}

TEST(NextOneProb, PatternProbabilityIsTheChainProduct) {
  // For the 16-block adder with t = 2, the pattern [9,6,3] must carry
  // probability prefix[6] * e(9,6) * e(6,3) * e(3,0).
  const AdderConfig cfg = validate_config(64, 4, 8);
  const auto sp = signal_probs<Dyadic>(cfg);
  const auto prefix = prefix_correct_probs(cfg, sp);
  const Dyadic expected = prefix[6] * next_one_prob(cfg, sp, prefix, 9, 6) *
                          next_one_prob(cfg, sp, prefix, 6, 3) *
                          next_one_prob(cfg, sp, prefix, 3, 0);

  const BigInt target = magnitude_of({9, 6, 3}, cfg.k);
  bool found = false;
  stream_distribution<Dyadic>(cfg, [&](const ErrorPattern<Dyadic>& pattern) {
    if (pattern.magnitude == target) {
      EXPECT_EQ(pattern.probability, expected);
      found = true;
      return false;
    }
    return true;
  });
  EXPECT_TRUE(found);
}

TEST(NextOneProb, SplitWindowCoefficientsMatchOracleCounts) {
  // k_prime = 1: distribution equality against the oracle covers every
  // e-coefficient in the product form.
  EXPECT_TRUE(testutil::distribution_matches_oracle(validate_config(12, 2, 3)));
}

TEST(NextOneProb, IndexContractIsEnforced) {
  const AdderConfig cfg = validate_config(32, 4, 4);
  const auto sp = signal_probs<Dyadic>(cfg);
  const auto prefix = prefix_correct_probs(cfg, sp);
  EXPECT_THROW(next_one_prob(cfg, sp, prefix, cfg.t, 0), std::logic_error);
  EXPECT_THROW(next_one_prob(cfg, sp, prefix, cfg.m, 0), std::logic_error);
  EXPECT_THROW(next_one_prob(cfg, sp, prefix, 5, 4), std::logic_error);
  EXPECT_THROW(next_one_prob(cfg, sp, prefix, 5, -1), std::logic_error);
}

TEST(Distribution, ExtremeMagnitudesMatchTheAdmissibleIndexSets) {
  for (const auto& [n, k, l] : std::vector<std::tuple<int, int, int>>{
           {32, 4, 4}, {24, 2, 3}, {64, 4, 10}, {16, 2, 2}}) {
    const AdderConfig cfg = validate_config(n, k, l);
    const auto dist = enumerate_distribution<double>(cfg);
    ASSERT_GE(dist.patterns.size(), 2u);
    // Smallest non-zero magnitude: a single 1 at the lowest admissible block.
    EXPECT_EQ(dist.patterns[1].magnitude, BigInt(1) << ((cfg.t + 1) * cfg.k));
    // Largest magnitude: the densest legal index set, packed from the top.
    BigInt densest = 0;
    for (int i = cfg.m - 1; i >= cfg.t + 1; i -= cfg.t + 1) {
      densest += BigInt(1) << (i * cfg.k);
    }
    EXPECT_EQ(dist.patterns.back().magnitude, densest)
        << "n=" << n << " k=" << k << " l=" << l;
    // Magnitudes are pairwise distinct and sorted.
    for (std::size_t i = 1; i < dist.patterns.size(); ++i) {
      ASSERT_LT(dist.patterns[i - 1].magnitude, dist.patterns[i].magnitude);
    }
  }
}

}  // namespace
}  // namespace adderstats
