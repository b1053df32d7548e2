#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace coarsekit {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes and weights computed by Newton iteration on P_n; cached per n.
const GaussLegendreRule& gauss_legendre(std::size_t n);

/// Integrate f over [lo, hi] with the n-point rule.
template <class F>
double integrate_gl(F&& f, double lo, double hi, std::size_t n) {
  const auto& rule = gauss_legendre(n);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

/// Composite rule over consecutive breakpoints.
template <class F>
double integrate_gl_panels(F&& f, std::span<const double> breaks, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    sum += integrate_gl(f, breaks[i], breaks[i + 1], n);
  }
  return sum;
}

}  // namespace coarsekit
