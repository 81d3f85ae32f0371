#include "rmflab/schedule.hpp"

#include <cmath>

#include "gtest/gtest.h"

namespace {

using namespace rmflab;

TEST(LogPoint, LlogConsistency) {
  for (double lx : {1.0, 2.5, 16.0, 1e3, 1e15}) {
    const LogPoint p = LogPoint::from_log(lx);
    EXPECT_NEAR(p.llog_value, std::log2(lx), 1e-12 * std::abs(p.llog_value));
  }
  const LogPoint q = LogPoint::from_llog(10.0);
  EXPECT_TRUE(q.has_log());
  EXPECT_NEAR(q.log_value, 1024.0, 1e-9);
  const LogPoint r = LogPoint::from_llog(100.0);
  EXPECT_FALSE(r.has_log());  // beyond the materialization threshold
}

TEST(LogPoint, MaterializationBoundary) {
  const LogPoint small = LogPoint::from_log(std::log(1e6));
  EXPECT_TRUE(small.materializable());
  EXPECT_EQ(small.value(), 1000000u);
  const LogPoint big = LogPoint::from_llog(10.0);  // log x = 1024
  EXPECT_FALSE(big.materializable());
  EXPECT_THROW(big.value(), std::domain_error);
}

TEST(TestPoints, FirstPointAndMonotone) {
  const TestPoints tp = test_points(1e-3, 1, 100000);
  EXPECT_EQ(tp.values[0], 2u);  // floor(e^{1^gamma}) = floor(e) = 2
  for (std::size_t i = 1; i < tp.values.size(); ++i)
    ASSERT_GE(tp.values[i], tp.values[i - 1]);
  EXPECT_FALSE(tp.overflowed);
}

TEST(TestPoints, ConsecutiveRatioTendsToOne) {
  // With the toy-scaled exponent the ratio sqrt(x_i / x_{i-1}) drops under
  // 1.01 beyond some i0 and stays there.
  std::vector<double> xs;
  for (std::uint64_t i = 1; i < 4000; ++i) {
    const double x = std::floor(std::exp(std::pow(i, 0.5)));
    if (xs.empty() || x > xs.back()) xs.push_back(x);
    if (x > 1e7) break;
  }
  std::size_t i0 = 0;
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (std::sqrt(xs[i] / xs[i - 1]) > 1.01) i0 = i;
  EXPECT_LT(i0 + 1, xs.size());  // a computed i0 exists
  for (std::size_t i = i0 + 1; i < xs.size(); ++i)
    ASSERT_LE(std::sqrt(xs[i] / xs[i - 1]), 1.01);
}

TEST(TestPoints, RejectsIllegalGamma) {
  EXPECT_THROW(test_points(0.5, 1, 10), std::invalid_argument);
  EXPECT_THROW(test_points(0.0, 1, 10), std::invalid_argument);
}

TEST(BigPoint, LlogIsEllToTheK) {
  const ScheduleParams p = ScheduleParams::from_epsilon(1e-3, 12.5);
  EXPECT_EQ(p.K, 2);
  EXPECT_EQ(big_point(p, 2).llog_value, 4.0);   // log X = 2^4 = 16
  EXPECT_TRUE(big_point(p, 2).has_log());
  EXPECT_NEAR(big_point(p, 2).log_value, 16.0, 1e-12);
  EXPECT_EQ(big_point(p, 10).llog_value, 100.0);
  EXPECT_FALSE(big_point(p, 10).has_log());
  EXPECT_EQ(big_point(p, 1).llog_value, 1.0);
}

TEST(YPoint, DefinitionAndRatio) {
  const ScheduleParams p = ScheduleParams::from_epsilon(1e-3, 12.5);
  const int ell = 3;
  // j = 0 recovers y_0: llog = ell^K (1 - K/ell).
  const double base = std::pow(3.0, 2) * (1.0 - 2.0 / 3.0);
  EXPECT_NEAR(y_point(p, ell, 0).llog_value, base, 1e-12);
  // log y_j / log y_{j-1} = e^{1/ell} exactly in llog space.
  for (int j = 1; j <= 10; ++j) {
    const double diff =
        y_point(p, ell, j).llog_value - y_point(p, ell, j - 1).llog_value;
    ASSERT_NEAR(diff, M_LOG2E / ell, 1e-12);
  }
  // Direct recomputation at (K=2, ell=3, j=3).
  const double expected = (3.0 / 3.0) * M_LOG2E + base;
  EXPECT_NEAR(y_point(p, ell, 3).llog_value, expected, 1e-12);
}

TEST(YPoint, RefusesEllBelowK) {
  const ScheduleParams p = ScheduleParams::from_epsilon(1e-3, 12.5);
  EXPECT_THROW(y_point(p, 2, 0), std::invalid_argument);
  EXPECT_THROW(y_point(p, 1, 0), std::invalid_argument);
}

// Scan oracle: largest j satisfying the llog-space condition by brute force.
int j_star_by_scan(const ScheduleParams& p, int ell) {
  const double lhs0 = std::pow(static_cast<double>(ell - 1), p.K);
  const double threshold = (2.0 * p.K / p.gamma) * std::log2(ell);
  int best = -1;
  for (int j = 0; j < 2000000; ++j) {
    if (lhs0 - y_point(p, ell, j).llog_value > threshold) best = j;
    else break;
  }
  return best;
}

TEST(JStar, MatchesScanAndDependsOnlyOnEll) {
  const ScheduleParams p = ScheduleParams::from_epsilon(1e-3, 12.5);
  for (int ell : {3, 5, 12, 30})
    ASSERT_EQ(j_star(p, ell), j_star_by_scan(p, ell)) << ell;
}

TEST(JStar, MonotoneInGamma) {
  // Larger gamma loosens the threshold, so j* is nondecreasing in gamma.
  // At K=2 the llog headroom is ~1, so force a regime where j* > -1 by
  // using big K via small epsilon.
  const ScheduleParams tight = ScheduleParams::from_epsilon(1e-4, 1.0);
  const ScheduleParams loose = ScheduleParams::from_epsilon(1e-3, 1.0);
  for (int ell : {26, 30}) {
    ASSERT_GE(j_star(loose, ell), j_star(tight, ell));
  }
}

int J_by_scan(const ScheduleParams& p, int ell, const LogPoint& x) {
  int J = 0;
  while (!(y_point(p, ell, J).llog_value > x.llog_value)) ++J;
  return J;
}

TEST(JFor, MatchesScanAndBracket) {
  const ScheduleParams p = ScheduleParams::from_epsilon(1e-3, 12.5);
  for (int ell : {4, 7, 25}) {
    const LogPoint x = big_point(p, ell);
    const int J = J_for(p, ell, x);
    ASSERT_EQ(J, J_by_scan(p, ell, x));
    ASSERT_GE(J, 1);
    ASSERT_GT(y_point(p, ell, J).llog_value, x.llog_value);
    ASSERT_LE(y_point(p, ell, J - 1).llog_value, x.llog_value);
  }
}

TEST(JFor, RejectsOutOfWindow) {
  const ScheduleParams p = ScheduleParams::from_epsilon(1e-3, 12.5);
  EXPECT_THROW(J_for(p, 5, big_point(p, 3)), std::invalid_argument);
}

TEST(JFor, CountAboveJStarIsBounded) {
  // #(j in (j*, J]) <= ceil((2K/gamma) ell ln(ell)) + 1 whenever j* >= 0.
  const ScheduleParams p = ScheduleParams::from_epsilon(1e-4, 1.0);
  for (int ell : {26, 28}) {
    const int js = j_star(p, ell);
    if (js < 0) continue;
    const int J = J_for(p, ell, big_point(p, ell));
    const double cap = std::ceil((2.0 * p.K / p.gamma) * ell * std::log(ell)) + 1;
    ASSERT_LE(J - js, cap) << ell;
  }
}

TEST(JFor, JOverEllKRatioStable) {
  // J ~ ell^K: the ratio stays within a fixed interval across ell.
  const ScheduleParams p = ScheduleParams::from_epsilon(1e-3, 12.5);
  double lo = 1e300, hi = 0.0;
  for (int ell = 25; ell <= 40; ++ell) {
    const double ratio = static_cast<double>(J_for(p, ell, big_point(p, ell))) /
                         std::pow(static_cast<double>(ell), p.K);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  EXPECT_GT(lo, 1.0);
  EXPECT_LT(hi, 2.0);
}

TEST(LowerBoundLadder, DefinitionChecks) {
  const LowerBoundLadder ladder = lower_bound_ladder(M_E, 1, 3);
  EXPECT_FALSE(ladder.lambda_warning);
  // k=1, lambda=e: log T = e^e.
  EXPECT_NEAR(ladder.points[0].T.log_value, std::exp(M_E), 1e-9);
  for (const LadderPoint& pt : ladder.points) {
    // sigma_k * log T_k = loglog T_k exactly.
    EXPECT_NEAR(pt.sigma * pt.T.log_value, std::log(pt.T.log_value), 1e-9);
  }
  // sigma_k decreasing in k.
  for (std::size_t i = 1; i < ladder.points.size(); ++i)
    EXPECT_LT(ladder.points[i].sigma, ladder.points[i - 1].sigma);
}

TEST(LowerBoundLadder, LambdaWarning) {
  EXPECT_TRUE(lower_bound_ladder(1.5, 0, 3).lambda_warning);
  EXPECT_FALSE(lower_bound_ladder(2.5, 0, 3).lambda_warning);
  EXPECT_THROW(lower_bound_ladder(0.9, 0, 3), std::invalid_argument);
}

TEST(ToySchedule, LiteralLadder) {
  const std::vector<double> y = toy_schedule(1000.0, 1.5, 4);
  ASSERT_EQ(y.size(), 4u);
  EXPECT_NEAR(y[0], 1000.0, 1e-9);
  for (std::size_t j = 1; j < y.size(); ++j)
    EXPECT_NEAR(std::log(y[j]) / std::log(y[j - 1]), 1.5, 1e-12);
}

TEST(ScheduleParams, GammaValidation) {
  EXPECT_THROW(ScheduleParams::from_epsilon(0.5, 12.5), std::invalid_argument);
  EXPECT_THROW(ScheduleParams::from_epsilon(2e-3, 12.5), std::invalid_argument);
  EXPECT_NO_THROW(ScheduleParams::from_epsilon(1e-3, 12.5));
}

}  // namespace
