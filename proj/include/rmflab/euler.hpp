#ifndef RMFLAB_EULER_HPP
#define RMFLAB_EULER_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmflab/arith.hpp"
#include "rmflab/quadrature.hpp"
#include "rmflab/sign_oracle.hpp"
#include "rmflab/stats.hpp"

namespace rmflab {

// Evaluation point s = 1/2 + sigma + i t. sigma > -1/2 keeps every factor
// 1 + f(p) p^{-s} away from zero (|f(p) p^{-s}| <= 2^{-1/2-sigma} < 1).
struct ComplexShift {
  double sigma = 0.0;
  double t = 0.0;

  ComplexShift() = default;
  ComplexShift(double sigma_, double t_) : sigma(sigma_), t(t_) {
    if (!(sigma > -0.5))
      throw std::domain_error("ComplexShift: sigma must be > -1/2");
  }
};

// Primes in (y_lo, y_hi].
struct ProductWindow {
  double y_lo = 1.0;
  double y_hi = 1.0;

  ProductWindow() = default;
  ProductWindow(double lo, double hi) : y_lo(lo), y_hi(hi) {
    if (!(y_lo >= 1.0)) throw std::invalid_argument("ProductWindow: y_lo < 1");
  }
  bool empty() const { return !(y_hi > y_lo); }
};

// Prime list with precomputed log p and p^{-1/2-sigma}, so repeated
// evaluations at many t only pay for one sincos per (prime, t).
class WindowProducts {
 public:
  WindowProducts(const ProductWindow& w, double sigma) : sigma_(sigma) {
    if (!(sigma > -0.5))
      throw std::domain_error("WindowProducts: sigma must be > -1/2");
    for_each_prime(w.y_lo, w.y_hi, [&](std::uint64_t p) {
      primes_.push_back(p);
      log_p_.push_back(std::log(static_cast<double>(p)));
      amp_.push_back(std::exp(-(0.5 + sigma) * log_p_.back()));
    });
  }

  std::size_t size() const { return primes_.size(); }
  const std::vector<std::uint64_t>& primes() const { return primes_; }

  // sum_p log(1 + f(p) p^{-s}) at s = 1/2 + sigma + i t, principal branches.
  template <SignSource S>
  std::complex<double> log_product(const S& signs, double t) const {
    KahanComplex acc;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      const double phase = t * log_p_[i];
      const double a = amp_[i] * static_cast<double>(signs.sign(primes_[i]));
      // f(p) p^{-s} = a * (cos(t log p) - i sin(t log p))
      acc.add(std::log(std::complex<double>(1.0 + a * std::cos(phase),
                                            -a * std::sin(phase))));
    }
    return acc.value();
  }

  // Faster real path: 2 * Re log F, i.e. log |F|^2, at shift t.
  template <SignSource S>
  double log_abs2(const S& signs, double t) const {
    KahanSum acc;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      const double phase = t * log_p_[i];
      const double a = amp_[i] * static_cast<double>(signs.sign(primes_[i]));
      const double re = 1.0 + a * std::cos(phase);
      const double im = a * std::sin(phase);
      acc.add(std::log(re * re + im * im));
    }
    return acc.value();
  }

  double sigma() const { return sigma_; }

 private:
  double sigma_;
  std::vector<std::uint64_t> primes_;
  std::vector<double> log_p_;
  std::vector<double> amp_;
};

template <SignSource S>
std::complex<double> log_product(const S& signs, const ProductWindow& w,
                                 const ComplexShift& s) {
  if (w.empty()) return {0.0, 0.0};
  WindowProducts wp(w, s.sigma);
  return wp.log_product(signs, s.t);
}

// k-th increment of the Euler product: the window
// (y0^{e^{-(k+2)}}, y0^{e^{-(k+1)}}], exponentiated. Empty windows give 1.
template <SignSource S>
std::complex<double> increment_I_k(const S& signs, double y0, int k,
                                   const ComplexShift& s) {
  if (k < 0) throw std::invalid_argument("increment_I_k: k < 0");
  if (!(y0 > 1.0)) throw std::invalid_argument("increment_I_k: y0 <= 1");
  const double ly = std::log(y0);
  const double lo = std::exp(ly * std::exp(-(k + 2.0)));
  const double hi = std::exp(ly * std::exp(-(k + 1.0)));
  if (hi < 2.0) return {1.0, 0.0};
  return std::exp(log_product(signs, ProductWindow(std::max(lo, 1.0), hi), s));
}

inline double increment_window_lo(double y0, int k) {
  return std::exp(std::log(y0) * std::exp(-(k + 2.0)));
}
inline double increment_window_hi(double y0, int k) {
  return std::exp(std::log(y0) * std::exp(-(k + 1.0)));
}

// Exact one-prime expectation
//   E |1 + f p^{-1/2-sigma-it1}|^{2 alpha} |1 + f p^{-1/2-sigma-it2}|^{2 beta}
// = ( g(+1) + g(-1) ) / 2 over the two signs. The proposition-level product
// over p of these values is what the Euler-product estimate approximates.
inline double per_prime_expectation_exact(std::uint64_t p, double sigma,
                                          double t1, double t2, double alpha,
                                          double beta) {
  if (!is_prime_u64(p))
    throw std::domain_error("per_prime_expectation_exact: p not prime");
  const double lp = std::log(static_cast<double>(p));
  const double a = std::exp(-(0.5 + sigma) * lp);
  auto mag2 = [&](int eps, double t) {
    const double re = 1.0 + eps * a * std::cos(t * lp);
    const double im = eps * a * std::sin(t * lp);
    return re * re + im * im;
  };
  auto g = [&](int eps) {
    const double m1 = mag2(eps, t1);
    const double m2 = mag2(eps, t2);
    if ((m1 < 1e-280 && alpha < 0) || (m2 < 1e-280 && beta < 0))
      throw std::domain_error(
          "per_prime_expectation_exact: vanishing factor with negative "
          "exponent");
    return std::pow(m1, alpha) * std::pow(m2, beta);
  };
  return 0.5 * (g(+1) + g(-1));
}

// Product over the window of the exact per-prime expectation, accumulated in
// log space.
inline double window_expectation_exact(const ProductWindow& w, double sigma,
                                       double t1, double t2, double alpha,
                                       double beta) {
  KahanSum log_acc;
  for_each_prime(w.y_lo, w.y_hi, [&](std::uint64_t p) {
    log_acc.add(
        std::log(per_prime_expectation_exact(p, sigma, t1, t2, alpha, beta)));
  });
  return std::exp(log_acc.value());
}

struct RatioBoundCheck {
  double mc_estimate = 0.0;
  double mc_stderr = 0.0;
  double exact = 0.0;     // product of exact per-prime expectations
  double z_cutoff = 0.0;  // exp(1/|t|)
  bool mc_within_3se = false;
};

// E prod_{p <= exp(1/|t|)} |(1 + f p^{-1/2-sigma-it}) / (1 + f p^{-1/2-sigma})|^2,
// Monte Carlo against the exact per-prime product (alpha=1, beta=-1 case).
inline RatioBoundCheck expected_ratio_bound_check(
    double t, double sigma, std::size_t samples = 20000,
    std::uint64_t base_seed = 1, double budget = 1e8) {
  if (!(std::abs(t) > 0 && std::abs(t) <= 0.5))
    throw std::invalid_argument("expected_ratio_bound_check: need 0 < |t| <= 1/2");
  RatioBoundCheck out;
  out.z_cutoff = std::floor(std::exp(1.0 / std::abs(t)));
  if (out.z_cutoff > budget)
    throw resource_error("expected_ratio_bound_check: exp(1/|t|) over budget");

  const ProductWindow w(1.5, out.z_cutoff);
  out.exact = window_expectation_exact(w, sigma, t, 0.0, 1.0, -1.0);

  WindowProducts wp(w, sigma);
  std::vector<double> draws(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    SignOracle o(base_seed + i, Model::Rademacher);
    draws[i] = std::exp(wp.log_abs2(o, t) - wp.log_abs2(o, 0.0));
  }
  const MeanStats st = mean_and_stderr(draws);
  out.mc_estimate = st.mean;
  out.mc_stderr = st.stderror;
  out.mc_within_3se = std::abs(st.mean - out.exact) <= 3.0 * st.stderror;
  return out;
}

// Integral over [N-1/2, N+1/2] of |F_y(1/2+sigma+it)|^2 for one sample path.
// Composite Gauss-Legendre with doubling; the refinement must move the value
// by < 1e-6 relative or we refuse with diagnostics.
template <SignSource S>
double chaos_window_integral(const S& signs, double y, double sigma, int N,
                             int quad_points = 64) {
  if (quad_points < 16)
    throw std::invalid_argument("chaos_window_integral: quad_points < 16");
  WindowProducts wp(ProductWindow(1.0, y), sigma);
  auto integrand = [&](double t) { return std::exp(wp.log_abs2(signs, t)); };
  // Smoothness scale of |F_y|^2 in t is ~ 1/log y.
  const int base_panels =
      std::max(quad_points / 8, static_cast<int>(std::ceil(4.0 * std::log(y)) / 8) + 1);
  const AdaptiveResult r = gl_integrate_adaptive(
      integrand, N - 0.5, N + 0.5, 1e-6, base_panels, 8, 10);
  if (!r.converged)
    throw std::runtime_error(
        "chaos_window_integral: quadrature did not converge (last change " +
        std::to_string(r.last_change) + " at " + std::to_string(r.panels) +
        " panels, y = " + std::to_string(y) + ")");
  return r.value;
}

// Signed dyadic t-windows T = +-2^n / log(y0) covering
// (1/log y0, (loglog y0)^{-eps}], split at (loglog y0)^{-K} into the inner
// group (toward t = 0) and the outer group.
struct DyadicWindow {
  double t_lo = 0.0;  // |t| window (t_lo, t_hi]
  double t_hi = 0.0;
  int sgn = +1;
  bool outer = false;
};

inline std::vector<DyadicWindow> dyadic_windows(double y0, double K,
                                                double eps) {
  if (!(y0 >= 16.0)) throw std::invalid_argument("dyadic_windows: y0 < 16");
  if (!(eps > 0 && eps < K))
    throw std::invalid_argument("dyadic_windows: need 0 < eps < K");
  const double log_y0 = std::log(y0);
  const double llog_y0 = std::log(log_y0);
  const double hi_target = std::pow(llog_y0, -eps);
  const double cutoff = std::pow(llog_y0, -K);
  if (!(1.0 / log_y0 < hi_target))
    throw std::invalid_argument(
        "dyadic_windows: empty cover (1/log y0 >= (loglog y0)^{-eps})");

  std::vector<DyadicWindow> out;
  for (double T = 1.0 / log_y0; T < hi_target; T *= 2.0) {
    DyadicWindow w;
    w.t_lo = T;
    w.t_hi = 2.0 * T;
    w.outer = (T >= cutoff);
    w.sgn = +1;
    out.push_back(w);
    w.sgn = -1;
    out.push_back(w);
  }
  return out;
}

struct ChaosProbeRow {
  double y = 0.0;
  double q = 0.0;
  double estimate = 0.0;
  double stderror = 0.0;
  double reference = 0.0;  // envelope (min{log y, 1/|sigma|} / (1+(1-q) sqrt(loglog y)))^q
  double ratio = 0.0;
};

// Monte Carlo fractional moments of the unit-window chaos integral at
// sigma = 0, N = 0, against the proposition-shaped envelope. The envelope
// constant is unspecified, so the ratio column is the product, not a verdict.
inline std::vector<ChaosProbeRow> chaos_moment_probe(
    const std::vector<double>& y_ladder, double q, std::size_t samples,
    std::uint64_t base_seed = 1, double sigma = 0.0, int quad_points = 64) {
  if (!(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("chaos_moment_probe: q outside [0, 1]");
  if (samples < 100)
    throw std::invalid_argument("chaos_moment_probe: samples < 100");
  for (std::size_t i = 1; i < y_ladder.size(); ++i)
    if (!(y_ladder[i] > y_ladder[i - 1]))
      throw std::invalid_argument("chaos_moment_probe: ladder must ascend");

  std::vector<ChaosProbeRow> rows;
  for (double y : y_ladder) {
    ChaosProbeRow row;
    row.y = y;
    row.q = q;
    if (q == 0.0) {
      row.estimate = 1.0;  // zeroth moment
      row.stderror = 0.0;
    } else {
      std::vector<double> draws(samples);
      for (std::size_t i = 0; i < samples; ++i) {
        SignOracle o(base_seed + i, Model::Rademacher);
        draws[i] =
            std::pow(chaos_window_integral(o, y, sigma, 0, quad_points), q);
      }
      const MeanStats st = mean_and_stderr(draws);
      row.estimate = st.mean;
      row.stderror = st.stderror;
    }
    const double envelope_num =
        (sigma == 0.0) ? std::log(y)
                       : std::min(std::log(y), 1.0 / std::abs(sigma));
    const double envelope =
        std::pow(envelope_num / (1.0 + (1.0 - q) * std::sqrt(std::log(std::log(y)))),
                 q);
    row.reference = envelope;
    row.ratio = row.estimate / envelope;
    rows.push_back(row);
  }
  return rows;
}

// Exact q = 1 value by Fubini: E of the unit-window integral equals
// prod_{p <= y} (1 + p^{-1-2 sigma}) (the per-prime expectation is
// t-independent), times the unit window length.
inline double chaos_integral_mean_exact(double y, double sigma) {
  return window_expectation_exact(ProductWindow(1.0, y), sigma, 0.0, 0.0, 1.0,
                                  0.0);
}

}  // namespace rmflab

#endif  // RMFLAB_EULER_HPP
