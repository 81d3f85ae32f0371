#ifndef RMFLAB_STATS_HPP
#define RMFLAB_STATS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rmflab {

// Compensated (Neumaier) accumulator. All cross-seed and cross-panel
// aggregation goes through this so that a fixed summation order reproduces
// results to the last bit and reordering stays within ~1 ulp.
class KahanSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  void add(const KahanSum& other) {
    add(other.sum_);
    add(other.comp_);
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class KahanComplex {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  KahanSum re_, im_;
};

struct MeanStats {
  double mean = 0.0;
  double stddev = 0.0;     // sample standard deviation
  double stderror = 0.0;   // stddev / sqrt(count)
  std::size_t count = 0;
};

inline MeanStats mean_and_stderr(const std::vector<double>& v) {
  MeanStats s;
  s.count = v.size();
  if (v.empty()) return s;
  KahanSum acc;
  for (double x : v) acc.add(x);
  s.mean = acc.value() / static_cast<double>(v.size());
  if (v.size() > 1) {
    KahanSum sq;
    for (double x : v) sq.add((x - s.mean) * (x - s.mean));
    s.stddev = std::sqrt(sq.value() / static_cast<double>(v.size() - 1));
    s.stderror = s.stddev / std::sqrt(static_cast<double>(v.size()));
  }
  return s;
}

inline double binomial_stderr(double p_hat, std::size_t n) {
  if (n == 0) return 0.0;
  return std::sqrt(std::max(p_hat * (1.0 - p_hat), 0.0) /
                   static_cast<double>(n));
}

// Fixed quantile set reported for every aggregate: min, 5%, 25%, 50%, 75%,
// 95%, max. Linear interpolation on the sorted sample.
struct Quantiles {
  double min = 0, p5 = 0, p25 = 0, p50 = 0, p75 = 0, p95 = 0, max = 0;
};

inline Quantiles compute_quantiles(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("compute_quantiles: empty sample");
  std::sort(v.begin(), v.end());
  auto q = [&](double p) {
    const double pos = p * static_cast<double>(v.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= v.size()) return v.back();
    const double frac = pos - static_cast<double>(i);
    return v[i] * (1.0 - frac) + v[i + 1] * frac;
  };
  return Quantiles{v.front(), q(0.05), q(0.25), q(0.50),
                   q(0.75),   q(0.95), v.back()};
}

}  // namespace rmflab

#endif  // RMFLAB_STATS_HPP
