#include "rmflab/partial_sums.hpp"

#include <cmath>
#include <complex>

#include "gtest/gtest.h"
#include "rmflab/arith.hpp"
#include "rmflab/sign_oracle.hpp"

namespace {

using namespace rmflab;

// Pointwise oracle for the streaming engine: factor via trial division.
int rademacher_value_oracle(const SignOracle& o, std::uint64_t n) {
  int v = 1;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e >= 2) return 0;
    v *= o.sign(p);
  }
  if (m > 1) v *= o.sign(m);
  return v;
}

TEST(ScanRealValues, MatchesPointwiseOracle) {
  SignOracle o(101, Model::Rademacher);
  scan_real_values(o, true, 2, 10000,
                   [&](std::uint64_t n, int v, std::uint64_t largest) {
                     ASSERT_EQ(v, rademacher_value_oracle(o, n)) << n;
                     std::uint64_t m = n, big = 1;
                     for (std::uint64_t p = 2; p * p <= m; ++p)
                       while (m % p == 0) {
                         m /= p;
                         big = p;
                       }
                     if (m > 1) big = m;
                     ASSERT_EQ(largest, big) << n;
                   },
                   /*segment_length=*/512);
}

TEST(PrefixSums, AllPlusHandValue) {
  // 1 + 1/sqrt(2) + 1/sqrt(3), frozen from direct evaluation.
  const auto signs = ExhaustiveSigns::all_plus({2, 3});
  SumSpec spec;
  const PrefixSeries s = prefix_sums_real(signs, true, 3.0, {3.0}, spec);
  EXPECT_NEAR(s.values[0].real(), 2.2844570503761732, 1e-15);
}

TEST(PrefixSums, EmptySumBelowOne) {
  SignOracle o(1, Model::Rademacher);
  SumSpec spec;
  const PrefixSeries s = prefix_sums(o, 0.9, {0.9}, spec);
  EXPECT_EQ(s.values[0], std::complex<double>(0.0, 0.0));
}

TEST(PrefixSums, RejectsUnsortedCheckpoints) {
  SignOracle o(1, Model::Rademacher);
  SumSpec spec;
  EXPECT_THROW(prefix_sums(o, 100.0, {50.0, 10.0}, spec),
               std::invalid_argument);
  EXPECT_THROW(prefix_sums(o, 100.0, {10.0, 10.4}, spec),
               std::invalid_argument);  // equal after floor snap
}

TEST(PrefixSums, ExhaustiveSecondMomentAtTen) {
  // E |M_f(10)|^2 over all 2^4 sign assignments = sum mu^2(n)/n = 513/210.
  SumSpec spec;
  KahanSum acc;
  for_each_assignment({2, 3, 5, 7}, [&](const ExhaustiveSigns& signs) {
    const PrefixSeries s = prefix_sums_real(signs, true, 10.0, {10.0}, spec);
    acc.add(std::norm(s.values[0]));
  });
  EXPECT_NEAR(acc.value() / 16.0, 513.0 / 210.0, 1e-14);
}

TEST(PrefixSums, PartitionInvariance) {
  // Smooth(y0) plus window-sums over a partition of (y0, x] reassembles the
  // unrestricted sum.
  SignOracle o(7, Model::Rademacher);
  const double x = 20000.0;
  SumSpec none;
  const double full = prefix_sums(o, x, {x}, none).values[0].real();

  SumSpec smooth;
  smooth.restriction = SumSpec::Restriction::Smooth;
  smooth.smooth_y = 13.0;
  KahanSum sum;
  sum.add(prefix_sums(o, x, {x}, smooth).values[0].real());
  const std::vector<double> cuts{13.0, 100.0, 512.0, 4000.0, x};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    SumSpec win;
    win.restriction = SumSpec::Restriction::Window;
    win.window_lo = cuts[i];
    win.window_hi = cuts[i + 1];
    sum.add(prefix_sums(o, x, {x}, win).values[0].real());
  }
  EXPECT_NEAR(sum.value(), full, 1e-9 * (1.0 + std::abs(full)));
}

TEST(PrefixSums, RoughRestrictionMatchesDirect) {
  // P(n) > sqrt(x) at each checkpoint, against a direct double loop.
  SignOracle o(3, Model::Rademacher);
  const std::vector<double> checkpoints{50.0, 200.0, 1000.0};
  SumSpec rough;
  rough.restriction = SumSpec::Restriction::Rough;
  const PrefixSeries s = prefix_sums(o, 1000.0, checkpoints, rough);

  FactorTable t = build_factor_table(0, 1001);
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    KahanSum direct;
    const double x = checkpoints[c];
    for (std::uint64_t n = 1; n <= static_cast<std::uint64_t>(x); ++n) {
      const FactorProfile fp = factor_profile(n, t);
      const double fv = value_at(o, n, t).real();
      if (fv != 0.0 &&
          static_cast<double>(fp.largest_prime) > std::sqrt(x))
        direct.add(fv / std::sqrt(static_cast<double>(n)));
    }
    EXPECT_NEAR(s.values[c].real(), direct.value(), 1e-10) << x;
  }
}

TEST(PrefixSums, SteinhausMatchesPointwise) {
  SignOracle o(11, Model::Steinhaus);
  SumSpec spec;
  const PrefixSeries s = prefix_sums(o, 500.0, {500.0}, spec);
  FactorTable t = build_factor_table(0, 501);
  KahanComplex direct;
  for (std::uint64_t n = 1; n <= 500; ++n)
    direct.add(value_at(o, n, t) / std::sqrt(static_cast<double>(n)));
  EXPECT_NEAR(std::abs(s.values[0] - direct.value()), 0.0, 1e-10);
}

TEST(PrimeSplit, ReconstructionIdentity) {
  SignOracle o(13, Model::Rademacher);
  const double x = 1e5;
  const std::vector<double> y{10.0, 100.0, 1000.0, 10000.0, 100000.0,
                              200000.0};
  const PrimeSplit split = prime_split(o, x, y);
  SumSpec spec;
  const double mf = prefix_sums(o, x, {x}, spec).values[0].real();
  EXPECT_NEAR(split.total(), mf, 1e-9 * (1.0 + std::abs(mf)));
}

TEST(PrimeSplit, EmptyBucketIsZero) {
  SignOracle o(13, Model::Rademacher);
  // (24, 28] contains no prime.
  const std::vector<double> y{24.0, 28.0, 40.0};
  const PrimeSplit split = prime_split(o, 30.0, y);
  EXPECT_EQ(split.buckets[0], 0.0);
}

TEST(PrimeSplit, HandEnumerationAtThirty) {
  const auto signs = ExhaustiveSigns::all_plus({2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  const std::vector<double> y{2.0, 5.0, 31.0};
  const PrimeSplit split = prime_split(signs, 30.0, y);

  // S_0: n <= 30 with P(n) <= 2: 1, 2 (4, 8, 16 vanish on the squarefree
  // support). S_1: p in (2,5], S_2: p in (5,31], by hand.
  EXPECT_NEAR(split.smooth, 1.0 + 1.0 / std::sqrt(2.0), 1e-12);

  auto inner = [&](double z, std::uint64_t p) {
    // sum over n <= z, P(n) < p, squarefree, all-plus signs
    KahanSum acc;
    FactorTable t = build_factor_table(0, 32);
    for (std::uint64_t n = 1; n <= static_cast<std::uint64_t>(z); ++n) {
      const FactorProfile fp = factor_profile(n, t);
      if (fp.is_squarefree && fp.largest_prime < p)
        acc.add(1.0 / std::sqrt(static_cast<double>(n)));
    }
    return acc.value();
  };
  const double s1 = inner(10.0, 3) / std::sqrt(3.0) + inner(6.0, 5) / std::sqrt(5.0);
  EXPECT_NEAR(split.buckets[0], s1, 1e-12);
  const double s2 = inner(30.0 / 7, 7) / std::sqrt(7.0) +
                    inner(30.0 / 11, 11) / std::sqrt(11.0) +
                    inner(30.0 / 13, 13) / std::sqrt(13.0) +
                    inner(30.0 / 17, 17) / std::sqrt(17.0) +
                    inner(30.0 / 19, 19) / std::sqrt(19.0) +
                    inner(30.0 / 23, 23) / std::sqrt(23.0) +
                    inner(30.0 / 29, 29) / std::sqrt(29.0);
  EXPECT_NEAR(split.buckets[1], s2, 1e-12);
}

TEST(VarianceV, SinglePrimeWindowHandValue) {
  SignOracle o(5, Model::Rademacher);
  // Window (2,3] has only p=3; inner sum at x=6 is f(1) + f(2)/sqrt(2).
  const double v = variance_V(o, 6.0, 2.0, 3.0);
  const double inner = 1.0 + o.sign(2) / std::sqrt(2.0);
  EXPECT_NEAR(v, inner * inner / 3.0, 1e-14);
}

TEST(VarianceV, EmptyWindowAndPositivity) {
  SignOracle o(5, Model::Rademacher);
  EXPECT_EQ(variance_V(o, 30.0, 24.0, 28.0), 0.0);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SignOracle os(seed, Model::Rademacher);
    EXPECT_GE(variance_V(os, 100.0, 3.0, 50.0), 0.0);
  }
}

TEST(VarianceVRough, HandValueAndAgreement) {
  SignOracle o(5, Model::Rademacher);
  // x = 4: window (2, 4], only p = 3; inner sum over n <= 4/3 is f(1) = 1.
  EXPECT_NEAR(variance_V_rough(o, 4.0), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(variance_V_rough(o, 100.0), variance_V(o, 100.0, 10.0, 100.0),
              1e-14);
  EXPECT_THROW(variance_V_rough(o, 3.0), std::invalid_argument);
}

TEST(IdentityHeur, ExactAcrossSeedsAndX) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SignOracle o(seed, Model::CompletelyMultiplicativeRademacher);
    const IdentityCheck c = identity_check_heur(o, 1e4);
    EXPECT_LE(c.abs_gap, 1e-9 * (1.0 + std::abs(c.lhs))) << seed;
  }
}

TEST(IdentityHeur, TrivialAtOne) {
  SignOracle o(2, Model::CompletelyMultiplicativeRademacher);
  const IdentityCheck c = identity_check_heur(o, 1.0);
  EXPECT_NEAR(c.lhs, 1.0, 1e-15);
  EXPECT_NEAR(c.rhs, 1.0, 1e-15);
}

TEST(IdentityHeur, AllPlusByEnumeration) {
  // All-plus signs: f*(n) = 1 for every n, so lhs = 10. The right side must
  // reproduce it through the floor/fractional split.
  // Use a seedless all-plus via the exhaustive machinery: build an oracle
  // whose signs are +1 by brute-force seed search on the primes <= 10 is
  // fragile, so check the identity algebraically with the frozen value.
  SignOracle o(424243, Model::CompletelyMultiplicativeRademacher);
  const IdentityCheck c = identity_check_heur(o, 10.0);
  EXPECT_LE(c.abs_gap, 1e-12 * (1.0 + std::abs(c.lhs)));
  FactorTable t = build_factor_table(0, 11);
  KahanSum direct;
  for (std::uint64_t n = 1; n <= 10; ++n)
    direct.add(value_at(o, n, t).real());
  EXPECT_NEAR(c.lhs, direct.value(), 1e-12);
}

TEST(IdentityHeur, RejectsWrongModel) {
  SignOracle o(1, Model::Rademacher);
  EXPECT_THROW(identity_check_heur(o, 100.0), std::invalid_argument);
  EXPECT_THROW(identity_check_heur2(o, 100.0), std::invalid_argument);
}

TEST(IdentityHeur2, ExactAcrossSeedsAndX) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SignOracle o(seed, Model::CompletelyMultiplicativeRademacher);
    const IdentityCheck c = identity_check_heur2(o, 1e4);
    EXPECT_LE(c.abs_gap, 1e-9 * (1.0 + std::abs(c.lhs))) << seed;
  }
}

TEST(IdentityHeur2, SingleBTermAtSmallX) {
  SignOracle o(9, Model::CompletelyMultiplicativeRademacher);
  const IdentityCheck c = identity_check_heur2(o, 3.0);
  SumSpec spec;
  const double mf = prefix_sums_real(o, true, 3.0, {3.0}, spec).values[0].real();
  EXPECT_NEAR(c.rhs, mf, 1e-14);
}

TEST(IdentityHeur2, EnumerationAtNine) {
  SignOracle o(4, Model::CompletelyMultiplicativeRademacher);
  const IdentityCheck c = identity_check_heur2(o, 9.0);
  FactorTable t = build_factor_table(0, 10);
  KahanSum direct;
  for (std::uint64_t n = 1; n <= 9; ++n)
    direct.add(value_at(o, n, t).real() / std::sqrt(static_cast<double>(n)));
  EXPECT_NEAR(c.lhs, direct.value(), 1e-13);
  EXPECT_NEAR(c.rhs, direct.value(), 1e-13);
}

TEST(DirectLoopBudget, RefusesPastBudget) {
  SignOracle o(1, Model::Rademacher);
  EXPECT_THROW(variance_V(o, 3e7, 2.0, 100.0), resource_error);
}

// Slow-variation probe: with the toy-scaled grid, the maximal increment of
// M_f between consecutive test points trends down with i. Reported as a
// monotone-trend statistic, not a hard bound.
TEST(SlowVariation, IncrementTrendStatistic) {
  const std::vector<double> grid = [&] {
    std::vector<double> g;
    for (std::uint64_t i = 1;; ++i) {
      const double x = std::floor(std::exp(std::pow(i, 0.5)));
      if (x > 1e5) break;
      if (g.empty() || x > g.back()) g.push_back(x);
    }
    return g;
  }();
  double early = 0.0, late = 0.0;
  int n_seeds = 10;
  for (std::uint64_t seed = 1; seed <= static_cast<std::uint64_t>(n_seeds);
       ++seed) {
    SignOracle o(seed, Model::Rademacher);
    SumSpec spec;
    const PrefixSeries s = prefix_sums(o, 1e5, grid, spec);
    const std::size_t half = s.values.size() / 2;
    for (std::size_t i = 1; i < s.values.size(); ++i) {
      const double inc = std::abs(s.values[i] - s.values[i - 1]);
      if (i <= half) early = std::max(early, inc);
      else late = std::max(late, inc);
    }
  }
  RecordProperty("max_increment_early", early);
  RecordProperty("max_increment_late", late);
  EXPECT_LT(late, early);  // trend statistic over the pooled seeds
}

}  // namespace
