#ifndef RMFLAB_ARITH_HPP
#define RMFLAB_ARITH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmflab/quadrature.hpp"
#include "rmflab/stats.hpp"

namespace rmflab {

// Raised when an operation would exceed its configured memory / output
// budget. CLI maps this to exit code 3.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SieveOptions {
  std::uint64_t segment_length = std::uint64_t{1} << 22;
  // Cap on stored entries of a single FactorTable (4 bytes each).
  std::uint64_t max_entries = std::uint64_t{1} << 28;
};

inline std::vector<std::uint32_t> simple_prime_sieve(std::uint64_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<char> is_prime(limit + 1, 1);
  is_prime[0] = 0;
  is_prime[1] = 0;
  for (std::uint64_t i = 2; i * i <= limit; ++i)
    if (is_prime[i])
      for (std::uint64_t j = i * i; j <= limit; j += i) is_prime[j] = 0;
  for (std::uint64_t i = 2; i <= limit; ++i)
    if (is_prime[i]) primes.push_back(static_cast<std::uint32_t>(i));
  return primes;
}

// Smallest-prime-factor table over [lo, hi), built with a segmented sieve so
// peak scratch memory is one segment regardless of range length. Entries are
// stored as uint32 (a composite's smallest prime factor is at most sqrt(n));
// primes and the sentinels 0, 1 are stored as 0 and resolved by spf().
class FactorTable {
 public:
  FactorTable(std::uint64_t lo, std::uint64_t hi, SieveOptions opt = {})
      : lo_(lo), hi_(hi) {
    if (hi <= lo) throw std::invalid_argument("FactorTable: hi <= lo");
    if (hi - lo > opt.max_entries)
      throw resource_error("FactorTable: range exceeds max_entries budget");
    spf_.assign(hi - lo, 0);

    const std::uint64_t root =
        static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi - 1)));
    const std::vector<std::uint32_t> base = simple_prime_sieve(root + 1);

    const std::uint64_t seg = std::max<std::uint64_t>(opt.segment_length, 64);
    for (std::uint64_t slo = lo; slo < hi; slo += seg) {
      const std::uint64_t shi = std::min(hi, slo + seg);
      for (std::uint32_t p : base) {
        const std::uint64_t P = p;
        if (2 * P >= shi) break;
        // First multiple k*p >= slo with k >= 2.
        std::uint64_t start = ((slo + P - 1) / P) * P;
        if (start < 2 * P) start = 2 * P;
        for (std::uint64_t n = start; n < shi; n += P) {
          std::uint32_t& slot = spf_[n - lo_];
          if (slot == 0) slot = p;
        }
      }
    }
  }

  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }
  bool covers(std::uint64_t n) const { return n >= lo_ && n < hi_; }

  // Smallest prime factor; spf(n) = n for primes, spf(1) = 1, spf(0) = 0.
  std::uint64_t spf(std::uint64_t n) const {
    if (!covers(n))
      throw std::out_of_range("FactorTable::spf: n outside [lo, hi)");
    const std::uint32_t s = spf_[n - lo_];
    return s == 0 ? n : s;
  }

 private:
  std::uint64_t lo_, hi_;
  std::vector<std::uint32_t> spf_;
};

inline FactorTable build_factor_table(std::uint64_t lo, std::uint64_t hi,
                                      SieveOptions opt = {}) {
  return FactorTable(lo, hi, opt);
}

struct FactorProfile {
  bool is_squarefree = true;
  int omega = 0;                   // number of distinct prime factors
  std::uint64_t largest_prime = 1; // P(n); P(1) = 1 by convention
};

// Walks the spf chain of n. Every intermediate cofactor must be covered by
// the table, so profile queries want a table starting at 0 (or 2).
inline FactorProfile factor_profile(std::uint64_t n, const FactorTable& t) {
  if (n == 0) throw std::domain_error("factor_profile: n = 0");
  FactorProfile fp;
  std::uint64_t m = n;
  while (m > 1) {
    if (!t.covers(m))
      throw std::out_of_range("factor_profile: cofactor not covered by table");
    const std::uint64_t p = t.spf(m);
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e >= 2) fp.is_squarefree = false;
    ++fp.omega;
    fp.largest_prime = p;  // spf chain yields primes in increasing order
  }
  return fp;
}

// tau_k(n): number of ordered k-tuples with product n. Multiplicative with
// tau_k(p^e) = C(e+k-1, k-1). Trial division; meant for desk-scale n.
inline std::uint64_t tau_k(std::uint64_t n, int k) {
  if (k < 1) throw std::domain_error("tau_k: k must be >= 1");
  if (n == 0) throw std::domain_error("tau_k: n = 0");
  auto binom = [](std::uint64_t a, std::uint64_t b) {
    if (b > a) return std::uint64_t{0};
    b = std::min(b, a - b);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  std::uint64_t result = 1;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    std::uint64_t e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    result *= binom(e + k - 1, k - 1);
  }
  if (m > 1) result *= static_cast<std::uint64_t>(k);
  return result;
}

// Half-open-from-the-left prime window (lo, hi], matching the paper-style
// summation ranges y_{j-1} < p <= y_j.
struct PrimeRange {
  double lo = 0.0;
  double hi = 0.0;
};

// Enumerates primes p with lo < p <= hi in increasing order, segmented.
template <class F>
void for_each_prime(double lo, double hi, F&& fn) {
  if (!(hi > lo) || hi < 2.0) return;
  const std::uint64_t first = static_cast<std::uint64_t>(std::floor(lo)) + 1;
  const std::uint64_t last = static_cast<std::uint64_t>(std::floor(hi));
  if (last < 2 || last < first) return;
  const std::uint64_t a = std::max<std::uint64_t>(first, 2);

  const std::uint64_t root =
      static_cast<std::uint64_t>(std::sqrt(static_cast<double>(last)));
  const std::vector<std::uint32_t> base = simple_prime_sieve(root + 1);

  const std::uint64_t seg = std::uint64_t{1} << 22;
  std::vector<char> sieve;
  for (std::uint64_t slo = a; slo <= last; slo += seg) {
    const std::uint64_t shi = std::min(last, slo + seg - 1);
    sieve.assign(shi - slo + 1, 1);
    for (std::uint32_t p : base) {
      const std::uint64_t P = p;
      if (P * P > shi) break;
      std::uint64_t start = std::max(P * P, ((slo + P - 1) / P) * P);
      for (std::uint64_t n = start; n <= shi; n += P) sieve[n - slo] = 0;
    }
    for (std::uint64_t n = slo; n <= shi; ++n)
      if (sieve[n - slo] && n >= 2) fn(n);
  }
}

inline std::vector<std::uint64_t> primes_in(const PrimeRange& w) {
  std::vector<std::uint64_t> out;
  for_each_prime(w.lo, w.hi, [&](std::uint64_t p) { out.push_back(p); });
  return out;
}

// Exact sum over primes in (w.lo, w.hi] of p^{-(1+2*sigma)}.
inline double prime_power_sum(const PrimeRange& w, double sigma) {
  if (sigma < 0) throw std::domain_error("prime_power_sum: sigma < 0");
  KahanSum acc;
  const double expo = 1.0 + 2.0 * sigma;
  for_each_prime(w.lo, w.hi, [&](std::uint64_t p) {
    acc.add(std::pow(static_cast<double>(p), -expo));
  });
  return acc.value();
}

// Prime-number-theorem surrogate for the same sum over log-space ranges too
// large to enumerate: integral over v in [log_lo, log_hi] of e^{-2*sigma*v}/v.
// Quadrature is refined to a relative 1e-12 target (documented tolerance
// 1e-10).
inline double analytic_prime_power_sum(double log_lo, double log_hi,
                                       double sigma) {
  if (log_lo <= 0) throw std::domain_error("analytic_prime_power_sum: log_lo <= 0");
  if (log_hi < log_lo)
    throw std::invalid_argument("analytic_prime_power_sum: log_hi < log_lo");
  if (log_hi == log_lo) return 0.0;
  auto integrand = [sigma](double v) { return std::exp(-2.0 * sigma * v) / v; };
  const AdaptiveResult r =
      gl_integrate_adaptive(integrand, log_lo, log_hi, 1e-12, 4, 16);
  return r.value;
}

// All y-smooth integers <= limit, ascending, starting with 1.
inline std::vector<std::uint64_t> enumerate_smooth(
    double y, double limit, std::size_t max_output = std::size_t{1} << 27) {
  if (y < 2.0) throw std::invalid_argument("enumerate_smooth: y < 2");
  if (limit < 1.0) throw std::invalid_argument("enumerate_smooth: limit < 1");
  const std::uint64_t lim = static_cast<std::uint64_t>(std::floor(limit));
  std::vector<std::uint32_t> primes = simple_prime_sieve(
      static_cast<std::uint64_t>(std::floor(std::min(y, limit))));

  std::vector<std::uint64_t> out;
  // DFS over prime exponents; products stay <= lim.
  struct Frame {
    std::size_t idx;
    std::uint64_t value;
  };
  std::vector<Frame> stack;
  stack.push_back({0, 1});
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    out.push_back(f.value);
    if (out.size() > max_output)
      throw resource_error("enumerate_smooth: output budget exceeded");
    for (std::size_t i = f.idx; i < primes.size(); ++i) {
      const std::uint64_t p = primes[i];
      if (f.value > lim / p) break;
      stack.push_back({i, f.value * p});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Rankin upper bound for the smooth tail sum_{n > x, P(n) <= y} 1/n:
//   x^{-1/log y} * prod_{p <= y} (1 - p^{-(1 - 1/log y)})^{-1}.
// Meaningful for y > e (so the shifted exponent stays positive).
inline double rankin_tail_bound(double x, double y) {
  if (x <= 1.0) throw std::invalid_argument("rankin_tail_bound: x <= 1");
  if (y < 2.0) throw std::invalid_argument("rankin_tail_bound: y < 2");
  const double delta = 1.0 / std::log(y);
  KahanSum log_prod;
  for_each_prime(1.0, y, [&](std::uint64_t p) {
    log_prod.add(-std::log1p(-std::pow(static_cast<double>(p), -(1.0 - delta))));
  });
  return std::exp(-delta * std::log(x) + log_prod.value());
}

}  // namespace rmflab

#endif  // RMFLAB_ARITH_HPP
