#ifndef RMFLAB_QUADRATURE_HPP
#define RMFLAB_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmflab/stats.hpp"

namespace rmflab {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Nodes/weights by Newton iteration on the Legendre polynomial. Orders used
// here are small (<= 32); rules are cached per order.
inline const GaussLegendreRule& gauss_legendre(int order) {
  static std::map<int, GaussLegendreRule> cache;
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  if (order < 1) throw std::invalid_argument("gauss_legendre: order < 1");

  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-like initial guess.
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = order * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return cache.emplace(order, std::move(rule)).first->second;
}

template <class F>
double gl_integrate(F&& f, double a, double b, int panels, int order = 16) {
  if (panels < 1) throw std::invalid_argument("gl_integrate: panels < 1");
  const GaussLegendreRule& rule = gauss_legendre(order);
  KahanSum acc;
  const double h = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * h;
    const double mid = lo + 0.5 * h;
    const double half = 0.5 * h;
    for (int i = 0; i < order; ++i)
      acc.add(rule.weights[i] * f(mid + half * rule.nodes[i]) * half);
  }
  return acc.value();
}

struct AdaptiveResult {
  double value = 0.0;
  bool converged = false;
  int panels = 0;
  double last_change = 0.0;
};

// Panel doubling until the relative change falls under rel_tol. The caller
// decides whether a failed refinement is an error.
template <class F>
AdaptiveResult gl_integrate_adaptive(F&& f, double a, double b, double rel_tol,
                                     int initial_panels = 4, int order = 16,
                                     int max_doublings = 14) {
  AdaptiveResult res;
  int panels = std::max(1, initial_panels);
  double prev = gl_integrate(f, a, b, panels, order);
  for (int d = 0; d < max_doublings; ++d) {
    panels *= 2;
    const double cur = gl_integrate(f, a, b, panels, order);
    res.last_change = std::abs(cur - prev) / (std::abs(cur) + 1e-300);
    prev = cur;
    if (res.last_change < rel_tol) {
      res.value = cur;
      res.converged = true;
      res.panels = panels;
      return res;
    }
  }
  res.value = prev;
  res.panels = panels;
  return res;
}

}  // namespace rmflab

#endif  // RMFLAB_QUADRATURE_HPP
