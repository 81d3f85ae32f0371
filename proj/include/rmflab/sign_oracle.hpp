#ifndef RMFLAB_SIGN_ORACLE_HPP
#define RMFLAB_SIGN_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmflab/arith.hpp"

namespace rmflab {

enum class Model { Rademacher, CompletelyMultiplicativeRademacher, Steinhaus };

inline std::string model_name(Model m) {
  switch (m) {
    case Model::Rademacher: return "rademacher";
    case Model::CompletelyMultiplicativeRademacher: return "cmult";
    case Model::Steinhaus: return "steinhaus";
  }
  return "?";
}

inline Model model_from_name(const std::string& s) {
  if (s == "rademacher") return Model::Rademacher;
  if (s == "cmult" || s == "star") return Model::CompletelyMultiplicativeRademacher;
  if (s == "steinhaus") return Model::Steinhaus;
  throw std::invalid_argument("unknown model: " + s);
}

// SplitMix64 finalizer; full avalanche on any input difference.
inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Stateless keyed value: depends only on (seed, key, domain). Counter-based
// so parallel and out-of-order evaluation reproduces the same sample path.
inline std::uint64_t keyed_u64(std::uint64_t seed_hash, std::uint64_t key,
                               std::uint64_t domain = 0) {
  return mix64(seed_hash ^ (key * 0x9e3779b97f4a7c15ULL) ^
               (domain * 0xd1b54a32d192ed03ULL));
}

inline double to_unit_interval(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;  // [0, 1)
}

// Standard normal via Box-Muller on two keyed uniforms.
inline double keyed_gaussian(std::uint64_t seed_hash, std::uint64_t key,
                             std::uint64_t domain = 0) {
  const std::uint64_t h1 = keyed_u64(seed_hash, key, domain * 2 + 101);
  const std::uint64_t h2 = keyed_u64(seed_hash, key, domain * 2 + 102);
  const double u1 = (static_cast<double>(h1 >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
  const double u2 = to_unit_interval(h2);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

// Sequential SplitMix64 stream with Box-Muller pairing; self-seeded per
// consumer (walk, worker) so parallel use stays reproducible.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : state_(mix64(seed)) {}

  double next_unit() {  // (0, 1]
    state_ += 0x9e3779b97f4a7c15ULL;
    return (static_cast<double>(mix64(state_) >> 11) + 1.0) * 0x1.0p-53;
  }

  double next_gaussian() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

// Trivial sign source: f(p) = +1 on every prime (so the squarefree-supported
// value of n is exactly mu^2(n)).
struct AllPlusSigns {
  int sign(std::uint64_t) const { return 1; }
};

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                          19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  const std::uint64_t d0 = n - 1;
  int r = 0;
  std::uint64_t d = d0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % n);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t res = 1;
    a %= n;
    while (e) {
      if (e & 1) res = mulmod(res, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return res;
  };
  for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull,
                          9780504ull, 1795265022ull}) {
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// One sample path of the random model: independent values on the primes,
// pinned down entirely by (seed, model). sign()/unit() are the unchecked hot
// paths; prime_value() verifies primality of the argument.
class SignOracle {
 public:
  SignOracle(std::uint64_t seed, Model model)
      : seed_(seed), model_(model),
        seed_hash_(mix64(seed + 0x632be59bd9b4e019ULL)) {}

  std::uint64_t seed() const { return seed_; }
  Model model() const { return model_; }
  std::uint64_t seed_hash() const { return seed_hash_; }

  // Rademacher prime sign in {-1, +1}; shared by both Rademacher models so
  // f(n) = f*(n) on squarefree n under the same seed.
  int sign(std::uint64_t p) const {
    return (keyed_u64(seed_hash_, p) >> 63) ? 1 : -1;
  }

  // Steinhaus value on the complex unit circle.
  std::complex<double> unit(std::uint64_t p) const {
    const double theta = 2.0 * M_PI * to_unit_interval(keyed_u64(seed_hash_, p, 1));
    return {std::cos(theta), std::sin(theta)};
  }

  std::complex<double> prime_value(std::uint64_t p) const {
    if (!is_prime_u64(p))
      throw std::domain_error("prime_value: " + std::to_string(p) +
                              " is not prime");
    if (model_ == Model::Steinhaus) return unit(p);
    return {static_cast<double>(sign(p)), 0.0};
  }

 private:
  std::uint64_t seed_;
  Model model_;
  std::uint64_t seed_hash_;
};

// Exhaustive-mode sign assignment on an explicit list of primes; bit i of
// mask gives the sign of primes[i] (+1 when set). Queries outside the list
// throw, which keeps exact-expectation oracles honest about their support.
class ExhaustiveSigns {
 public:
  ExhaustiveSigns(std::vector<std::uint64_t> primes, std::uint32_t mask)
      : primes_(std::move(primes)), mask_(mask) {
    if (primes_.size() > 24)
      throw std::invalid_argument("ExhaustiveSigns: more than 24 primes");
    if (!std::is_sorted(primes_.begin(), primes_.end()))
      throw std::invalid_argument("ExhaustiveSigns: primes must be sorted");
    for (std::uint64_t p : primes_)
      if (!is_prime_u64(p))
        throw std::invalid_argument("ExhaustiveSigns: composite in list");
  }

  static ExhaustiveSigns all_plus(std::vector<std::uint64_t> primes) {
    const std::uint32_t mask =
        primes.size() >= 32 ? ~0u : ((1u << primes.size()) - 1u);
    return ExhaustiveSigns(std::move(primes), mask);
  }

  int sign(std::uint64_t p) const {
    auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
    if (it == primes_.end() || *it != p)
      throw std::invalid_argument("ExhaustiveSigns: prime " +
                                  std::to_string(p) + " not in listed set");
    const std::size_t i = static_cast<std::size_t>(it - primes_.begin());
    return (mask_ >> i) & 1u ? 1 : -1;
  }

  std::size_t count() const { return primes_.size(); }
  std::uint32_t assignments() const { return 1u << primes_.size(); }

 private:
  std::vector<std::uint64_t> primes_;
  std::uint32_t mask_;
};

template <class S>
concept SignSource = requires(const S& s, std::uint64_t p) {
  { s.sign(p) } -> std::convertible_to<int>;
};

// Runs fn over every sign assignment of the listed primes (2^m cases).
template <class F>
void for_each_assignment(const std::vector<std::uint64_t>& primes, F&& fn) {
  if (primes.size() > 24)
    throw std::invalid_argument("for_each_assignment: more than 24 primes");
  const std::uint32_t total = 1u << primes.size();
  for (std::uint32_t mask = 0; mask < total; ++mask)
    fn(ExhaustiveSigns(primes, mask));
}

// Pointwise model value at n from an spf table; every cofactor in the chain
// must be covered (use a table starting at 0).
inline std::complex<double> value_at(const SignOracle& o, std::uint64_t n,
                                     const FactorTable& t) {
  if (n == 0) throw std::domain_error("value_at: n = 0");
  std::complex<double> val{1.0, 0.0};
  std::uint64_t m = n;
  while (m > 1) {
    if (!t.covers(m))
      throw std::out_of_range("value_at: cofactor not covered by table");
    const std::uint64_t p = t.spf(m);
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    switch (o.model()) {
      case Model::Rademacher:
        if (e >= 2) return {0.0, 0.0};
        val *= static_cast<double>(o.sign(p));
        break;
      case Model::CompletelyMultiplicativeRademacher:
        if (e & 1) val *= static_cast<double>(o.sign(p));
        break;
      case Model::Steinhaus: {
        std::complex<double> u = o.unit(p);
        for (int i = 0; i < e; ++i) val *= u;
        break;
      }
    }
  }
  return val;
}

// Dense block of model values on [lo, hi) via the recursion
// value(n) = value(p-part) * value(n / p^e), single pass over the table.
// Needs chain coverage, i.e. a table with t.lo() <= 1.
inline std::vector<std::complex<double>> batch_values(const SignOracle& o,
                                                      std::uint64_t lo,
                                                      std::uint64_t hi,
                                                      const FactorTable& t) {
  if (hi < lo) throw std::invalid_argument("batch_values: hi < lo");
  if (hi == lo) return {};
  if (t.lo() > 1 || t.hi() < hi)
    throw std::invalid_argument("batch_values: table must cover [1, hi)");
  std::vector<std::complex<double>> all(hi);
  if (hi > 1) all[1] = {1.0, 0.0};
  for (std::uint64_t n = 2; n < hi; ++n) {
    const std::uint64_t p = t.spf(n);
    const std::uint64_t m = n / p;
    switch (o.model()) {
      case Model::Rademacher:
        all[n] = (m > 1 && t.spf(m) == p)
                     ? std::complex<double>{0.0, 0.0}
                     : all[m] * static_cast<double>(o.sign(p));
        break;
      case Model::CompletelyMultiplicativeRademacher:
        all[n] = all[m] * static_cast<double>(o.sign(p));
        break;
      case Model::Steinhaus:
        all[n] = all[m] * o.unit(p);
        break;
    }
  }
  return std::vector<std::complex<double>>(all.begin() + lo, all.begin() + hi);
}

}  // namespace rmflab

#endif  // RMFLAB_SIGN_ORACLE_HPP
