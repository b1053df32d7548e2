#pragma once

// Reference computations built from library special functions and brute
// force, independent of the coarsekit implementations.

#include <algorithm>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "coarsekit/core_model.hpp"

namespace testing_support {

// Periodic wave from the ODE: h^2 = (beta - alpha a^2/2)/kappa,
// k^2 = alpha a^2 / (2 kappa h^2).
struct OracleWave {
  double a, h, k;
  OracleWave(double amp, const coarsekit::ModelParams& p) : a(amp) {
    h = std::sqrt((p.beta - 0.5 * p.alpha * a * a) / p.kappa);
    k = std::sqrt(p.alpha * a * a / (2 * p.kappa * h * h));
  }
  double period() const { return 4 * boost::math::ellint_1(k) / h; }
  double value(double x) const { return a * boost::math::jacobi_sn(k, h * x); }
  double slope(double x) const {
    double cn = 0.0;
    double dn = 0.0;
    boost::math::jacobi_elliptic(k, h * x, &cn, &dn);
    return a * h * cn * dn;
  }
  double second(double x) const {
    double cn = 0.0;
    double dn = 0.0;
    const double sn = boost::math::jacobi_elliptic(k, h * x, &cn, &dn);
    return -a * h * h * sn * (dn * dn + k * k * cn * cn);
  }
};

// Endpoint-corrected trapezoid on 2^16 cells.
inline double energy_by_trapezoid(double a, const coarsekit::ModelParams& p) {
  const OracleWave w(a, p);
  auto density = [&](double x) {
    const double s = w.slope(x);
    return coarsekit::potential(w.value(x), 0, p) + 0.5 * p.kappa * s * s;
  };
  auto density_slope = [&](double x) {
    return 2 * coarsekit::potential(w.value(x), 1, p) * w.slope(x);
  };
  const int n = 1 << 16;
  const double L = p.half_length;
  const double dx = 2 * L / n;
  double sum = 0.5 * (density(-L) + density(L));
  for (int i = 1; i < n; ++i) sum += density(-L + i * dx);
  return dx * sum - dx * dx / 12.0 * (density_slope(L) - density_slope(-L));
}

// (1/2L) min over c in {Phi_j} of sum |Phi_j - c| dx, Phi the left-rectangle
// antiderivative of the samples.
inline double kohn_otto_brute(std::span<const double> s, double L) {
  const std::size_t n = s.size();
  const double dx = 2 * L / static_cast<double>(n);
  std::vector<double> big_phi(n);
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    big_phi[j] = acc;
    acc += dx * s[j];
  }
  double best = std::numeric_limits<double>::infinity();
  for (double c : big_phi) {
    double sum = 0.0;
    for (double v : big_phi) sum += std::abs(v - c) * dx;
    best = std::min(best, sum / (2 * L));
  }
  return best;
}

}  // namespace testing_support
