#include <cmath>
#include <map>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "esf/ewens.hpp"
#include "esf/oracle.hpp"

using namespace esf;

namespace {

BigRational q(long a, long b = 1) { return BigRational(a, b); }

// Pearson statistic of `samples` draws against the exact pmf over S_n; returns the upper-tail p-value.
double chi_square_p_value(std::size_t n, double alpha, std::uint64_t samples, std::uint64_t seed) {
  const auto g = oracle::enumerate_symmetric_group(n);
  std::map<std::vector<point_t>, std::size_t> index;
  for (std::size_t i = 0; i < g.elements.size(); ++i) index[g.elements[i].image()] = i;
  std::vector<std::uint64_t> counts(g.elements.size(), 0);
  Engine rng(seed);
  std::vector<point_t> image;
  const EwensParams params(alpha, n);
  for (std::uint64_t s = 0; s < samples; ++s) {
    sample_into(params, rng, image);
    ++counts[index.at(image)];
  }
  double stat = 0;
  std::size_t cells = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double expected = esf_pmf(params, g.elements[i]) * static_cast<double>(samples);
    if (expected == 0) {
      EXPECT_EQ(counts[i], 0u);
      continue;
    }
    stat += (static_cast<double>(counts[i]) - expected) * (static_cast<double>(counts[i]) - expected) / expected;
    ++cells;
  }
  boost::math::chi_squared dist(static_cast<double>(cells - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace

TEST(Factorials, Examples) {
  EXPECT_EQ(rising_factorial(2.0, 3), 24.0);
  EXPECT_EQ(falling_factorial(2.0, 3), 0.0);
  EXPECT_EQ(rising_factorial(q(1, 2), 2), q(3, 4));
  EXPECT_EQ(rising_factorial(q(5), 0), q(1));
  for (std::size_t n = 0; n <= 20; ++n) EXPECT_EQ(rising_factorial(q(1), n), BigRational(factorial(static_cast<unsigned>(n))));
}

TEST(Factorials, LogVariantMatchesExact) {
  for (double a : {0.5, 1.0, 2.0, 7.25, 100.0})
    for (std::size_t n : {1u, 5u, 16u, 17u, 40u, 150u}) {
      const double exact = static_cast<double>(boost::multiprecision::log(to_high(rising_factorial(BigRational(a), n))));
      const double got = log_rising_factorial(a, n);
      EXPECT_LE(std::abs(got - exact), 1e-10 * std::max(1.0, std::abs(exact))) << "a=" << a << " n=" << n;
    }
  EXPECT_EQ(log_rising_factorial(0.0, 0), 0.0);
  EXPECT_THROW(log_rising_factorial(0.0, 3), std::domain_error);
}

TEST(Pmf, Examples) {
  EXPECT_EQ(esf_pmf(q(1), parse_one_line("2 1 4 3"), 4), q(1, 24));
  EXPECT_EQ(esf_pmf(q(2), Permutation(3), 3), q(1, 3));
  EXPECT_EQ(esf_pmf(q(0), Permutation::long_cycle(3), 3), q(1, 2));
  EXPECT_EQ(esf_pmf(q(0), Permutation(3), 3), q(0));
  EXPECT_NEAR(esf_pmf(EwensParams(2.0, 3), Permutation(3)), 1.0 / 3, 1e-15);
  EXPECT_NEAR(std::exp(esf_log_pmf(EwensParams(0.0, 3), Permutation::long_cycle(3))), 0.5, 1e-15);
  EXPECT_THROW(esf_pmf(q(1), Permutation(3), 4), DegreeMismatch);
  EXPECT_THROW(EwensParams(-1.0, 3), std::invalid_argument);
  EXPECT_THROW(EwensParams(1.0, 0), std::invalid_argument);
}

TEST(Pmf, SumsToOneExactly) {
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto g = oracle::enumerate_symmetric_group(n);
    for (const BigRational& a : {q(0), q(1, 2), q(1), q(3), q(7, 3)}) {
      BigRational total = 0;
      for (const auto& p : g.elements) total += esf_pmf(a, p, n);
      ASSERT_EQ(total, q(1)) << "n=" << n << " alpha=" << to_string(a);
    }
  }
}

TEST(Pmf, UniformAtAlphaOne) {
  for (std::size_t n = 1; n <= 7; ++n)
    EXPECT_EQ(esf_pmf(q(1), Permutation::long_cycle(n), n), BigRational(1) / BigRational(factorial(static_cast<unsigned>(n))));
}

TEST(Stirling, Examples) {
  EXPECT_EQ(stirling_cycle(4, 2), 11);
  EXPECT_EQ(stirling_cycle(3, 1), 2);
  EXPECT_EQ(stirling_cycle(3, 2), 3);
  EXPECT_EQ(stirling_cycle(0, 0), 1);
  EXPECT_EQ(stirling_cycle(5, 0), 0);
  EXPECT_EQ(stirling_cycle(3, 4), 0);
}

TEST(Stirling, RecurrencesAgreeAndRowsSumToFactorial) {
  const auto a = stirling_cycle_table(30), b = stirling_cycle_table_by_pairs(30);
  ASSERT_EQ(a, b);
  for (std::size_t m = 0; m <= 30; ++m) {
    BigInt s = 0;
    for (const auto& v : a[m]) s += v;
    ASSERT_EQ(s, factorial(static_cast<unsigned>(m)));
  }
}

TEST(CycleCountPmf, Examples) {
  const auto p = cycle_count_pmf_exact(q(1), 3);
  EXPECT_EQ(p.probabilities, (std::vector<BigRational>{q(1, 3), q(1, 2), q(1, 6)}));
  const auto z = cycle_count_pmf_exact(q(0), 5);
  EXPECT_EQ(z.probabilities[0], q(1));
  EXPECT_EQ(cycle_count_pmf(EwensParams(0.0, 5)).probabilities[0], 1.0);
  const auto d = cycle_count_pmf(EwensParams(1.0, 3));
  EXPECT_NEAR(d.probabilities[1], 0.5, 1e-14);
}

TEST(CycleCountPmf, DoubleMatchesExactAndSumsToOne) {
  for (double a : {0.5, 1.0, 2.0, 5.0})
    for (std::size_t n : {1u, 4u, 20u, 60u}) {
      const auto exact = cycle_count_pmf_exact(BigRational(a), n);
      const auto approx = cycle_count_pmf(EwensParams(a, n));
      BigRational total = 0;
      for (std::size_t k = 0; k < n; ++k) {
        total += exact.probabilities[k];
        const double e = to_double(exact.probabilities[k]);
        ASSERT_NEAR(approx.probabilities[k], e, 1e-12 * std::max(e, 1e-300) + 1e-300);
      }
      ASSERT_EQ(total, q(1));
    }
}

TEST(CycleCountPmf, TailBound) {
  for (long a : {1, 2, 5})
    for (std::size_t n = 1; n <= 200; n += 7) {
      const double k0 = 10.0 * static_cast<double>(a) * (std::log(static_cast<double>(n)) + 1.0);
      const auto pmf = cycle_count_pmf_exact(q(a), n);
      for (std::size_t k = static_cast<std::size_t>(std::ceil(k0)); k <= n; ++k)
        ASSERT_LE(to_high(pmf.probabilities[k - 1]), boost::multiprecision::exp(-HighFloat(k)));
    }
}

TEST(CnkBound, Examples) {
  EXPECT_NEAR(cnk_bound_margin(1, 1), 0.0, 1e-15);
  const double expected = std::pow(std::log(4.0) + 1.0, 2) / 2.0 - 11.0 / 24.0;
  EXPECT_NEAR(cnk_bound_margin(4, 2), expected, 1e-14);
  EXPECT_GT(cnk_bound_margin(4, 2), 0.0);
  EXPECT_THROW(cnk_bound_margin(4, 5), std::invalid_argument);
}

TEST(CnkBound, HoldsUpToThirty) {
  const auto table = stirling_cycle_table(30);
  for (std::size_t n = 1; n <= 30; ++n)
    for (std::size_t k = 1; k <= n; ++k) ASSERT_GE(cnk_bound_margin_high(n, k, table), 0) << n << "," << k;
}

TEST(Sampler, DegreeOneIsIdentity) {
  Engine rng(1);
  for (double a : {0.0, 1.0, 50.0}) EXPECT_TRUE(sample(EwensParams(a, 1), rng).is_identity());
}

TEST(Sampler, LargeAlphaConcentratesOnIdentity) {
  Engine rng(2);
  int identity = 0;
  for (int i = 0; i < 10000; ++i) identity += sample(EwensParams(1e6, 10), rng).is_identity();
  // exact P(identity) = alpha^n / alpha^{(n)} ~ 0.99995
  EXPECT_GE(identity, 9900);
}

TEST(Sampler, AlphaZeroGivesLongCycles) {
  Engine rng(3);
  for (std::size_t n = 1; n <= 40; ++n)
    for (int i = 0; i < 20; ++i) ASSERT_EQ(sample(EwensParams(0.0, n), rng).cycle_count(), 1u);
}

TEST(Sampler, MeanCycleCount) {
  for (double a : {0.5, 1.0, 4.0}) {
    const EwensParams params(a, 50);
    Engine rng(4);
    double sum = 0, sq = 0;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) {
      const double c = static_cast<double>(sample(params, rng).cycle_count());
      sum += c;
      sq += c * c;
    }
    const double mean = sum / draws, var = sq / draws - mean * mean;
    EXPECT_LE(std::abs(mean - expected_cycle_count(params)), 4.0 * std::sqrt(var / draws)) << "alpha=" << a;
  }
}

TEST(Sampler, SeedDeterminesOutput) {
  const EwensParams params(1.5, 30);
  EXPECT_EQ(sample(params, 99), sample(params, 99));
  EXPECT_NE(stream_seed(1, 0), stream_seed(1, 1));
  EXPECT_NE(stream_seed(1, 0), stream_seed(2, 0));
}

TEST(Sampler, ChiSquareAgainstExactPmf) {
  EXPECT_GT(chi_square_p_value(3, 2.0, 200000, 5), 1e-4);
  EXPECT_GT(chi_square_p_value(4, 0.5, 200000, 6), 1e-4);
  EXPECT_GT(chi_square_p_value(4, 2.0, 200000, 7), 1e-4);
  EXPECT_GT(chi_square_p_value(5, 1.5, 300000, 8), 1e-4);
  EXPECT_GT(chi_square_p_value(5, 0.0, 100000, 9), 1e-4);
}
