#ifndef RMFLAB_SCHEDULE_HPP
#define RMFLAB_SCHEDULE_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace rmflab {

// A magnitude x stored as (log x, log2(log x)). The schedule points below
// have log x up to 2^1600, so comparisons and ratios happen in llog space;
// log_value is materialized only when small enough to be useful.
struct LogPoint {
  double log_value = std::numeric_limits<double>::quiet_NaN();
  double llog_value = 0.0;

  static constexpr double kMaterializeLlogLimit = 63.0;

  static LogPoint from_log(double log_x) {
    if (!(log_x > 0)) throw std::invalid_argument("LogPoint: log_x <= 0");
    return {log_x, std::log2(log_x)};
  }
  static LogPoint from_llog(double llog_x) {
    LogPoint p;
    p.llog_value = llog_x;
    if (llog_x <= kMaterializeLlogLimit) p.log_value = std::exp2(llog_x);
    return p;
  }

  bool has_log() const { return !std::isnan(log_value); }

  // Integer value, only when below 2^62.
  bool materializable() const {
    return has_log() && log_value <= 62.0 * M_LN2;
  }
  std::uint64_t value() const {
    if (!materializable())
      throw std::domain_error("LogPoint::value: too large to materialize");
    return static_cast<std::uint64_t>(std::floor(std::exp(log_value)));
  }

  friend bool operator<(const LogPoint& a, const LogPoint& b) {
    return a.llog_value < b.llog_value;
  }
  friend bool operator<=(const LogPoint& a, const LogPoint& b) {
    return a.llog_value <= b.llog_value;
  }
};

// The parameter pack of the upper-bound schedule. gamma is the test-point
// exponent (paper-legal range (0, 1/320), working value <= 1e-3); K is tied
// to epsilon by K = floor(25/epsilon).
struct ScheduleParams {
  double gamma = 1e-3;
  double epsilon = 12.5;
  int K = 2;
  double lambda = 2.5;       // lower-bound ladder growth
  double barrier_A = 1.0;    // event threshold constants; configuration,
  double barrier_C = 20.0;   // not assertions
  double T_growth_power = 10.0;  // T(ell) = ell^T_growth_power

  static ScheduleParams from_epsilon(double gamma, double epsilon) {
    if (!(gamma > 0 && gamma < 1.0 / 320.0))
      throw std::invalid_argument("ScheduleParams: gamma outside (0, 1/320)");
    if (gamma > 1e-3)
      throw std::invalid_argument("ScheduleParams: gamma must be <= 1e-3");
    if (!(epsilon > 0)) throw std::invalid_argument("ScheduleParams: epsilon <= 0");
    ScheduleParams p;
    p.gamma = gamma;
    p.epsilon = epsilon;
    p.K = static_cast<int>(std::floor(25.0 / epsilon));
    if (p.K < 1) throw std::invalid_argument("ScheduleParams: K < 1");
    return p;
  }

  double t_growth(int ell) const {
    return std::pow(static_cast<double>(ell), T_growth_power);
  }
};

struct TestPoints {
  std::vector<std::uint64_t> values;  // x_i = floor(exp(i^gamma))
  bool overflowed = false;            // stopped materializing at 2^62
};

// x_i = floor(exp(i^gamma)) for i in [i_lo, i_hi].
inline TestPoints test_points(double gamma, std::uint64_t i_lo,
                              std::uint64_t i_hi) {
  if (!(gamma > 0 && gamma < 1.0 / 320.0))
    throw std::invalid_argument("test_points: gamma outside (0, 1/320)");
  if (i_lo < 1 || i_hi < i_lo)
    throw std::invalid_argument("test_points: bad index range");
  TestPoints out;
  out.values.reserve(static_cast<std::size_t>(i_hi - i_lo + 1));
  for (std::uint64_t i = i_lo; i <= i_hi; ++i) {
    const double e = std::pow(static_cast<double>(i), gamma);
    if (e > 62.0 * M_LN2) {
      out.overflowed = true;
      break;
    }
    out.values.push_back(static_cast<std::uint64_t>(std::floor(std::exp(e))));
  }
  return out;
}

// Sparse points X_ell with log X_ell = 2^(ell^K), i.e. llog = ell^K exactly.
inline LogPoint big_point(const ScheduleParams& p, int ell) {
  if (ell < 1) throw std::invalid_argument("big_point: ell < 1");
  return LogPoint::from_llog(std::pow(static_cast<double>(ell), p.K));
}

// sigma_ell = 1 / log(X_ell); kept as llog(sigma) = -ell^K in callers that
// cannot afford the underflow.
inline double sigma_ell_llog(const ScheduleParams& p, int ell) {
  return -std::pow(static_cast<double>(ell), p.K);
}

// Bucket boundaries: log y_j = e^{j/ell} * 2^{ell^K (1 - K/ell)}, so
// llog y_j = (j/ell) log2(e) + ell^K (1 - K/ell). Requires ell > K, otherwise
// the leading exponent is nonpositive and y_0 degenerates below e.
inline LogPoint y_point(const ScheduleParams& p, int ell, int j) {
  if (ell <= p.K)
    throw std::invalid_argument(
        "y_point: requires ell > K (for ell <= K the schedule exponent "
        "1 - K/ell is nonpositive and y_0 < e; the formulas assume large ell)");
  if (j < 0) throw std::invalid_argument("y_point: j < 0");
  const double lk = std::pow(static_cast<double>(ell), p.K);
  const double llog = (static_cast<double>(j) / ell) * M_LOG2E +
                      lk * (1.0 - static_cast<double>(p.K) / ell);
  return LogPoint::from_llog(llog);
}

// Largest j with log(X_{ell-1}) / log(y_j) > ell^{2K/gamma}, or -1 if none.
// In llog space: llog X_{ell-1} - llog y_j > (2K/gamma) * log2(ell).
inline int j_star(const ScheduleParams& p, int ell) {
  const double lhs0 = std::pow(static_cast<double>(ell - 1), p.K);
  const double threshold =
      (2.0 * p.K / p.gamma) * std::log2(static_cast<double>(ell));
  auto cond = [&](int j) {
    return lhs0 - y_point(p, ell, j).llog_value > threshold;
  };
  if (!cond(0)) return -1;
  // llog y_j is affine in j; solve then fix up by scanning.
  const double lk = std::pow(static_cast<double>(ell), p.K);
  const double base = lk * (1.0 - static_cast<double>(p.K) / ell);
  double j_guess = (lhs0 - threshold - base) * ell / M_LOG2E;
  int j = std::max(0, static_cast<int>(std::floor(j_guess)) - 2);
  while (cond(j + 1)) ++j;
  while (j >= 0 && !cond(j)) --j;
  return j;
}

// Smallest J with y_J > x_i, for x_i in (X_{ell-1}, X_ell].
inline int J_for(const ScheduleParams& p, int ell, const LogPoint& x_i) {
  const LogPoint xlo = big_point(p, ell - 1);
  const LogPoint xhi = big_point(p, ell);
  if (!(xlo.llog_value < x_i.llog_value && x_i.llog_value <= xhi.llog_value))
    throw std::invalid_argument("J_for: x_i outside (X_{ell-1}, X_ell]");
  const double lk = std::pow(static_cast<double>(ell), p.K);
  const double base = lk * (1.0 - static_cast<double>(p.K) / ell);
  double j_guess = (x_i.llog_value - base) * ell / M_LOG2E;
  int J = std::max(0, static_cast<int>(std::floor(j_guess)) - 2);
  while (!(y_point(p, ell, J).llog_value > x_i.llog_value)) ++J;
  return J;
}

struct LadderPoint {
  LogPoint T;        // log T_k = exp(lambda^k)
  double sigma;      // sigma_k = lambda^k / exp(lambda^k) = loglog T / log T
  int k = 0;
};

struct LowerBoundLadder {
  std::vector<LadderPoint> points;
  bool lambda_warning = false;  // lambda <= 2: one summability step fails
};

inline LowerBoundLadder lower_bound_ladder(double lambda, int k_lo, int k_hi) {
  if (!(lambda > 1.0))
    throw std::invalid_argument("lower_bound_ladder: lambda must be > 1");
  if (k_lo < 0 || k_hi < k_lo)
    throw std::invalid_argument("lower_bound_ladder: bad k range");
  LowerBoundLadder out;
  out.lambda_warning = (lambda <= 2.0);
  for (int k = k_lo; k <= k_hi; ++k) {
    const double lk = std::pow(lambda, k);
    LadderPoint pt;
    pt.k = k;
    if (lk < 700.0) {
      pt.T = LogPoint::from_log(std::exp(lk));
    } else {
      pt.T = LogPoint::from_llog(lk * M_LOG2E);
    }
    pt.sigma = lk * std::exp(-lk);
    out.points.push_back(pt);
  }
  return out;
}

// Literal bucket ladder for experiments that must fit under the sieve:
// log y_j = log(y0) * ratio^j, j = 0..count-1.
inline std::vector<double> toy_schedule(double y0, double ratio, int count) {
  if (!(y0 >= 2.0)) throw std::invalid_argument("toy_schedule: y0 < 2");
  if (!(ratio > 1.0)) throw std::invalid_argument("toy_schedule: ratio <= 1");
  if (count < 1) throw std::invalid_argument("toy_schedule: count < 1");
  std::vector<double> y(count);
  double log_y = std::log(y0);
  for (int j = 0; j < count; ++j) {
    y[j] = std::exp(log_y);
    log_y *= ratio;
  }
  return y;
}

}  // namespace rmflab

#endif  // RMFLAB_SCHEDULE_HPP
