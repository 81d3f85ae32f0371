#ifndef RMFLAB_PARTIAL_SUMS_HPP
#define RMFLAB_PARTIAL_SUMS_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmflab/arith.hpp"
#include "rmflab/sign_oracle.hpp"
#include "rmflab/stats.hpp"

namespace rmflab {

// Streaming evaluation of f(n) and P(n) for n in [lo, hi), one segment at a
// time. Each segment is factored in place with the base primes <= sqrt(hi);
// the leftover cofactor, if any, is the (single) prime factor > sqrt(hi).
// Memory stays O(segment) no matter how long the range is.
//
// fn receives (n, value, largest_prime) with value in {-1, 0, +1}:
// squarefree_support = true gives the Rademacher extension (0 off the
// squarefree integers), false the completely multiplicative one.
template <SignSource S, class F>
void scan_real_values(const S& signs, bool squarefree_support, std::uint64_t lo,
                      std::uint64_t hi, F&& fn,
                      std::uint64_t segment_length = std::uint64_t{1} << 22) {
  if (hi <= lo) return;
  const std::uint64_t root =
      static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi - 1)));
  const std::vector<std::uint32_t> base = simple_prime_sieve(root + 1);

  std::vector<std::uint64_t> rem;
  std::vector<std::int8_t> val;
  std::vector<std::uint64_t> big;  // largest prime seen so far per slot

  for (std::uint64_t slo = std::max<std::uint64_t>(lo, 1); slo < hi;
       slo += segment_length) {
    const std::uint64_t shi = std::min(hi, slo + segment_length);
    const std::size_t len = static_cast<std::size_t>(shi - slo);
    rem.resize(len);
    val.assign(len, 1);
    big.assign(len, 1);
    for (std::size_t i = 0; i < len; ++i) rem[i] = slo + i;

    for (std::uint32_t p : base) {
      const std::uint64_t P = p;
      if (P >= shi) break;
      const int s = signs.sign(P);
      std::uint64_t start = ((slo + P - 1) / P) * P;
      for (std::uint64_t n = start; n < shi; n += P) {
        const std::size_t i = static_cast<std::size_t>(n - slo);
        int e = 0;
        while (rem[i] % P == 0) {
          rem[i] /= P;
          ++e;
        }
        if (squarefree_support) {
          val[i] = (e >= 2) ? std::int8_t{0}
                            : static_cast<std::int8_t>(val[i] * s);
        } else if (e & 1) {
          val[i] = static_cast<std::int8_t>(val[i] * s);
        }
        big[i] = P;
      }
    }
    for (std::size_t i = 0; i < len; ++i) {
      const std::uint64_t n = slo + i;
      std::int8_t v = val[i];
      std::uint64_t largest = big[i];
      if (rem[i] > 1) {  // single prime factor above sqrt(hi)
        largest = rem[i];
        if (v != 0) v = static_cast<std::int8_t>(v * signs.sign(rem[i]));
      }
      if (n == 1) {
        v = 1;
        largest = 1;
      }
      fn(n, static_cast<int>(v), largest);
    }
  }
}

// Steinhaus variant; value is complex on the unit circle times 0/1.
template <class F>
void scan_steinhaus_values(const SignOracle& o, std::uint64_t lo,
                           std::uint64_t hi, F&& fn,
                           std::uint64_t segment_length = std::uint64_t{1}
                                                          << 21) {
  if (hi <= lo) return;
  const std::uint64_t root =
      static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi - 1)));
  const std::vector<std::uint32_t> base = simple_prime_sieve(root + 1);

  std::vector<std::uint64_t> rem;
  std::vector<std::complex<double>> val;
  std::vector<std::uint64_t> big;

  for (std::uint64_t slo = std::max<std::uint64_t>(lo, 1); slo < hi;
       slo += segment_length) {
    const std::uint64_t shi = std::min(hi, slo + segment_length);
    const std::size_t len = static_cast<std::size_t>(shi - slo);
    rem.resize(len);
    val.assign(len, {1.0, 0.0});
    big.assign(len, 1);
    for (std::size_t i = 0; i < len; ++i) rem[i] = slo + i;

    for (std::uint32_t p : base) {
      const std::uint64_t P = p;
      if (P >= shi) break;
      const std::complex<double> u = o.unit(P);
      std::uint64_t start = ((slo + P - 1) / P) * P;
      for (std::uint64_t n = start; n < shi; n += P) {
        const std::size_t i = static_cast<std::size_t>(n - slo);
        int e = 0;
        while (rem[i] % P == 0) {
          rem[i] /= P;
          ++e;
        }
        for (int k = 0; k < e; ++k) val[i] *= u;
        big[i] = P;
      }
    }
    for (std::size_t i = 0; i < len; ++i) {
      const std::uint64_t n = slo + i;
      std::complex<double> v = val[i];
      std::uint64_t largest = big[i];
      if (rem[i] > 1) {
        largest = rem[i];
        v *= o.unit(rem[i]);
      }
      if (n == 1) {
        v = {1.0, 0.0};
        largest = 1;
      }
      fn(n, v, largest);
    }
  }
}

struct SumSpec {
  enum class Weight { One, InverseSqrt };
  enum class Restriction { None, Smooth, Rough, Window };

  Weight weight = Weight::InverseSqrt;
  Restriction restriction = Restriction::None;
  double smooth_y = 0.0;   // Smooth: P(n) <= smooth_y
  double window_lo = 0.0;  // Window: P(n) in (window_lo, window_hi]
  double window_hi = 0.0;

  std::string tag() const {
    std::string w = (weight == Weight::One) ? "one" : "invsqrt";
    switch (restriction) {
      case Restriction::None: return w + ":none";
      case Restriction::Smooth: return w + ":smooth(" + std::to_string(smooth_y) + ")";
      case Restriction::Rough: return w + ":rough";
      case Restriction::Window:
        return w + ":window(" + std::to_string(window_lo) + "," +
               std::to_string(window_hi) + "]";
    }
    return w;
  }
};

struct PrefixSeries {
  std::vector<double> checkpoints;  // floor-snapped, strictly increasing
  std::vector<std::complex<double>> values;
  std::uint64_t seed = 0;
  Model model = Model::Rademacher;
  SumSpec spec;
};

namespace detail {

inline std::vector<double> snap_checkpoints(const std::vector<double>& in,
                                            double x_max) {
  std::vector<double> cp;
  cp.reserve(in.size());
  for (double c : in) {
    const double s = std::floor(c);
    if (s < 0 || s > std::floor(x_max))
      throw std::invalid_argument("checkpoint outside [0, x_max]");
    if (!cp.empty() && s <= cp.back())
      throw std::invalid_argument("checkpoints must be strictly increasing");
    cp.push_back(s);
  }
  return cp;
}

// Index of the first checkpoint >= x, or cp.size() if none.
inline std::size_t first_checkpoint_at_least(const std::vector<double>& cp,
                                             double x) {
  return static_cast<std::size_t>(
      std::lower_bound(cp.begin(), cp.end(), x) - cp.begin());
}

}  // namespace detail

// Exact finite sums per spec at each checkpoint, one streaming pass over
// n <= x_max. The Rough restriction (P(n) > sqrt(x)) depends on the
// checkpoint, so each n contributes to the checkpoint interval
// [n, P(n)^2) via a difference array rather than a plain running sum.
template <SignSource S>
PrefixSeries prefix_sums_real(const S& signs, bool squarefree_support,
                              double x_max, const std::vector<double>& checkpoints,
                              const SumSpec& spec) {
  PrefixSeries out;
  out.checkpoints = detail::snap_checkpoints(checkpoints, x_max);
  out.spec = spec;
  const std::size_t m = out.checkpoints.size();
  std::vector<KahanSum> diff(m + 1);

  const std::uint64_t n_max = static_cast<std::uint64_t>(std::floor(x_max));
  if (n_max >= 1) {
    scan_real_values(signs, squarefree_support, 1, n_max + 1,
                     [&](std::uint64_t n, int v, std::uint64_t largest) {
                       if (v == 0) return;
                       const double w =
                           (spec.weight == SumSpec::Weight::One)
                               ? static_cast<double>(v)
                               : static_cast<double>(v) /
                                     std::sqrt(static_cast<double>(n));
                       const double P = static_cast<double>(largest);
                       std::size_t i0 = detail::first_checkpoint_at_least(
                           out.checkpoints, static_cast<double>(n));
                       std::size_t i1 = m;
                       switch (spec.restriction) {
                         case SumSpec::Restriction::None:
                           break;
                         case SumSpec::Restriction::Smooth:
                           if (P > spec.smooth_y) return;
                           break;
                         case SumSpec::Restriction::Window:
                           if (!(P > spec.window_lo && P <= spec.window_hi))
                             return;
                           break;
                         case SumSpec::Restriction::Rough:
                           // included at checkpoint x iff n <= x < P(n)^2
                           i1 = detail::first_checkpoint_at_least(
                               out.checkpoints, P * P);
                           break;
                       }
                       if (i0 >= i1) return;
                       diff[i0].add(w);
                       diff[i1].add(-w);
                     });
  }
  out.values.resize(m);
  KahanSum running;
  for (std::size_t i = 0; i < m; ++i) {
    running.add(diff[i].value());
    out.values[i] = {running.value(), 0.0};
  }
  return out;
}

inline PrefixSeries prefix_sums(const SignOracle& o, double x_max,
                                const std::vector<double>& checkpoints,
                                const SumSpec& spec) {
  PrefixSeries out;
  if (o.model() == Model::Steinhaus) {
    out.checkpoints = detail::snap_checkpoints(checkpoints, x_max);
    out.spec = spec;
    const std::size_t m = out.checkpoints.size();
    std::vector<KahanComplex> diff(m + 1);
    const std::uint64_t n_max = static_cast<std::uint64_t>(std::floor(x_max));
    if (n_max >= 1) {
      scan_steinhaus_values(
          o, 1, n_max + 1,
          [&](std::uint64_t n, std::complex<double> v, std::uint64_t largest) {
            const double P = static_cast<double>(largest);
            std::complex<double> w =
                (spec.weight == SumSpec::Weight::One)
                    ? v
                    : v / std::sqrt(static_cast<double>(n));
            std::size_t i0 = detail::first_checkpoint_at_least(
                out.checkpoints, static_cast<double>(n));
            std::size_t i1 = m;
            switch (spec.restriction) {
              case SumSpec::Restriction::None: break;
              case SumSpec::Restriction::Smooth:
                if (P > spec.smooth_y) return;
                break;
              case SumSpec::Restriction::Window:
                if (!(P > spec.window_lo && P <= spec.window_hi)) return;
                break;
              case SumSpec::Restriction::Rough:
                i1 = detail::first_checkpoint_at_least(out.checkpoints, P * P);
                break;
            }
            if (i0 >= i1) return;
            diff[i0].add(w);
            diff[i1].add(-w);
          });
    }
    out.values.resize(m);
    KahanComplex running;
    for (std::size_t i = 0; i < m; ++i) {
      running.add(diff[i].value());
      out.values[i] = running.value();
    }
  } else {
    out = prefix_sums_real(o, o.model() == Model::Rademacher, x_max,
                           checkpoints, spec);
  }
  out.seed = o.seed();
  out.model = o.model();
  return out;
}

// Direct-loop budget: the inner smooth sums below are the ground truth the
// verifier checks against, so they refuse past this size instead of
// approximating.
inline constexpr std::uint64_t kDirectLoopBudget = 20'000'000;

namespace detail {

// Dense f(n), P(n) arrays for n <= n_max; the workhorse for the inner sums
// sum_{n <= z, P(n) < p} f(n)/sqrt(n) evaluated at many (z, p).
template <SignSource S>
struct ValueTable {
  std::vector<std::int8_t> f;
  std::vector<double> largest;

  ValueTable(const S& signs, bool squarefree_support, std::uint64_t n_max) {
    if (n_max > kDirectLoopBudget)
      throw resource_error("direct-loop budget exceeded (n_max > 2e7)");
    f.assign(n_max + 1, 0);
    largest.assign(n_max + 1, 0.0);
    scan_real_values(signs, squarefree_support, 1, n_max + 1,
                     [&](std::uint64_t n, int v, std::uint64_t P) {
                       f[n] = static_cast<std::int8_t>(v);
                       largest[n] = static_cast<double>(P);
                     });
  }

  // sum_{n <= z, P(n) < p} f(n)/sqrt(n)
  double inner_sum(double z, double p) const {
    KahanSum acc;
    const std::uint64_t zi =
        std::min(static_cast<std::uint64_t>(std::floor(z)),
                 static_cast<std::uint64_t>(f.size() - 1));
    for (std::uint64_t n = 1; n <= zi; ++n)
      if (f[n] != 0 && largest[n] < p)
        acc.add(static_cast<double>(f[n]) / std::sqrt(static_cast<double>(n)));
    return acc.value();
  }
};

}  // namespace detail

struct PrimeSplit {
  double smooth;               // S_0: sum over n <= x_i with P(n) <= y_0
  std::vector<double> buckets; // S_j over prime windows (y_{j-1}, y_j]
  double total() const {
    KahanSum acc;
    acc.add(smooth);
    for (double s : buckets) acc.add(s);
    return acc.value();
  }
};

// Decomposition M_f(x_i) = S_0 + sum_j S_j with
//   S_j = sum_{y_{j-1} < p <= y_j} f(p)/sqrt(p) * sum_{n <= x_i/p, P(n) < p} f(n)/sqrt(n).
// Exact for the squarefree-supported model: the largest prime factor of a
// squarefree n splits off uniquely, so the buckets tile n by P(n).
template <SignSource S>
PrimeSplit prime_split(const S& signs, double x_i,
                       const std::vector<double>& y) {
  if (y.size() < 2) throw std::invalid_argument("prime_split: need y_0 < ... < y_J");
  for (std::size_t j = 1; j < y.size(); ++j)
    if (!(y[j] > y[j - 1]))
      throw std::invalid_argument("prime_split: y must be strictly increasing");
  if (!(y.back() >= x_i))
    throw std::invalid_argument("prime_split: y_J must be >= x_i");

  const std::uint64_t n_max = static_cast<std::uint64_t>(std::floor(x_i));
  detail::ValueTable<S> table(signs, /*squarefree_support=*/true, n_max);

  PrimeSplit out;
  KahanSum smooth;
  for (std::uint64_t n = 1; n <= n_max; ++n)
    if (table.f[n] != 0 && table.largest[n] <= y[0])
      smooth.add(static_cast<double>(table.f[n]) /
                 std::sqrt(static_cast<double>(n)));
  out.smooth = smooth.value();

  out.buckets.resize(y.size() - 1, 0.0);
  for (std::size_t j = 1; j < y.size(); ++j) {
    KahanSum bucket;
    for_each_prime(y[j - 1], std::min(y[j], x_i), [&](std::uint64_t p) {
      const double inner =
          table.inner_sum(x_i / static_cast<double>(p), static_cast<double>(p));
      bucket.add(static_cast<double>(signs.sign(p)) /
                 std::sqrt(static_cast<double>(p)) * inner);
    });
    out.buckets[j - 1] = bucket.value();
  }
  return out;
}

// V(x_i; y_lo, y_hi) = sum_{y_lo < p <= y_hi} (1/p) |sum_{n <= x_i/p, P(n) < p} f(n)/sqrt(n)|^2
template <SignSource S>
double variance_V(const S& signs, double x_i, double y_lo, double y_hi) {
  if (!(2.0 <= y_lo && y_lo < y_hi && y_hi <= x_i))
    throw std::invalid_argument("variance_V: need 2 <= y_lo < y_hi <= x_i");
  const std::uint64_t n_max = static_cast<std::uint64_t>(std::floor(x_i));
  detail::ValueTable<S> table(signs, true, n_max);
  KahanSum acc;
  for_each_prime(y_lo, y_hi, [&](std::uint64_t p) {
    const double inner =
        table.inner_sum(x_i / static_cast<double>(p), static_cast<double>(p));
    acc.add(inner * inner / static_cast<double>(p));
  });
  return acc.value();
}

// Restricted variance over the rough window (sqrt(x_i), x_i].
template <SignSource S>
double variance_V_rough(const S& signs, double x_i) {
  if (!(x_i >= 4.0)) throw std::invalid_argument("variance_V_rough: x_i < 4");
  return variance_V(signs, x_i, std::sqrt(x_i), x_i);
}

struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_gap = 0.0;
};

inline std::uint64_t isqrt_u64(std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t r = static_cast<std::uint64_t>(
      std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// sum_{n<=x} f*(n) = sqrt(x) * M_f(x) - sum_{a<=x} {sqrt(x/a)} f(a),
// from writing n = a b^2 with a squarefree and counting the b.
inline IdentityCheck identity_check_heur(const SignOracle& o, double x) {
  if (o.model() != Model::CompletelyMultiplicativeRademacher)
    throw std::invalid_argument(
        "identity_check_heur: oracle model must be completely multiplicative");
  const std::uint64_t xi = static_cast<std::uint64_t>(std::floor(x));
  IdentityCheck out;

  KahanSum lhs;  // over f*
  scan_real_values(o, /*squarefree_support=*/false, 1, xi + 1,
                   [&](std::uint64_t, int v, std::uint64_t) {
                     lhs.add(static_cast<double>(v));
                   });
  out.lhs = lhs.value();

  KahanSum m_f;         // M_f(x) = sum f(a)/sqrt(a), squarefree support
  KahanSum frac_term;   // sum {sqrt(x/a)} f(a)
  scan_real_values(o, /*squarefree_support=*/true, 1, xi + 1,
                   [&](std::uint64_t a, int v, std::uint64_t) {
                     if (v == 0) return;
                     const double av = static_cast<double>(a);
                     m_f.add(static_cast<double>(v) / std::sqrt(av));
                     const double root = std::sqrt(static_cast<double>(xi) / av);
                     const double frac =
                         root - static_cast<double>(isqrt_u64(xi / a));
                     frac_term.add(static_cast<double>(v) * frac);
                   });
  out.rhs = std::sqrt(static_cast<double>(xi)) * m_f.value() - frac_term.value();
  out.abs_gap = std::abs(out.lhs - out.rhs);
  return out;
}

// sum_{n<=x} f*(n)/sqrt(n) = sum_{b <= sqrt(x)} (1/b) M_f(x/b^2).
inline IdentityCheck identity_check_heur2(const SignOracle& o, double x) {
  if (o.model() != Model::CompletelyMultiplicativeRademacher)
    throw std::invalid_argument(
        "identity_check_heur2: oracle model must be completely multiplicative");
  const std::uint64_t xi = static_cast<std::uint64_t>(std::floor(x));
  IdentityCheck out;

  KahanSum lhs;
  scan_real_values(o, false, 1, xi + 1,
                   [&](std::uint64_t n, int v, std::uint64_t) {
                     if (v)
                       lhs.add(static_cast<double>(v) /
                               std::sqrt(static_cast<double>(n)));
                   });
  out.lhs = lhs.value();

  // M_f at the thresholds x/b^2, all collected in one streaming pass.
  const std::uint64_t b_max = isqrt_u64(xi);
  std::vector<double> thresholds(b_max);
  for (std::uint64_t b = 1; b <= b_max; ++b)
    thresholds[b - 1] = static_cast<double>(xi / (b * b));
  std::vector<double> sorted = thresholds;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  SumSpec spec;  // inverse-sqrt, no restriction
  PrefixSeries series = prefix_sums_real(o, true, static_cast<double>(xi),
                                         sorted, spec);
  KahanSum rhs;
  for (std::uint64_t b = 1; b <= b_max; ++b) {
    const double t = thresholds[b - 1];
    const std::size_t idx = static_cast<std::size_t>(
        std::lower_bound(sorted.begin(), sorted.end(), t) - sorted.begin());
    rhs.add(series.values[idx].real() / static_cast<double>(b));
  }
  out.rhs = rhs.value();
  out.abs_gap = std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace rmflab

#endif  // RMFLAB_PARTIAL_SUMS_HPP
