#pragma once

// Exact periodic stationary waves a*sn(h x, k) of the quartic model and the
// kink solution.

#include "coarsekit/core_model.hpp"
#include "coarsekit/special_fn.hpp"

namespace coarsekit {

/// The odd periodic stationary solution with phi(0) = 0 and max |phi| = a.
///
/// Waves near the binodal are parameterised by the gap `binodal - a`, which
/// keeps the complementary modulus (and hence the period) accurate when the
/// gap is far below the resolution of `a` itself.
class PeriodicWave {
 public:
  /// 0 < a < binodal, otherwise DomainError.
  static PeriodicWave from_amplitude(double a, const ModelParams& params);
  /// 0 < gap < binodal.
  static PeriodicWave from_gap(double gap, const ModelParams& params);

  double amplitude() const { return amplitude_; }
  double gap() const { return gap_; }
  const EllipticModulus& modulus() const { return jacobi_.modulus(); }
  /// Spatial scale h(a) in phi = a sn(h x, k).
  double scale() const { return scale_; }
  double quarter_k() const { return quarter_k_; }
  double period() const { return 4.0 * quarter_k_ / scale_; }
  const ModelParams& params() const { return params_; }

  double operator()(double x) const;
  double slope(double x) const;
  /// phi_xx = F'(phi) / kappa.
  double curvature(double x) const;

  struct Sample {
    double phi;
    double phi_x;
  };
  Sample sample(double x) const;

 private:
  PeriodicWave(double a, double gap, const ModelParams& params);

  ModelParams params_;
  double amplitude_;
  double gap_;
  double scale_;
  JacobiEvaluator jacobi_;
  double quarter_k_;
};

enum class PeriodMethod { elliptic, quadrature };

/// p(a); the quadrature route integrates the defining integral after the
/// substitution y = a sin(theta).
double wave_period(double a, const ModelParams& params,
                   PeriodMethod method = PeriodMethod::elliptic);

/// p'(a) from the closed-form derivative of the period integral.
double period_derivative(double a, const ModelParams& params);

/// The wave whose period is p; p must exceed p_min.
PeriodicWave wave_from_period(double p, const ModelParams& params);
double amplitude_from_period(double p, const ModelParams& params);

/// sqrt(beta/alpha) tanh(sqrt(beta/(2 kappa)) x).
double kink_profile(double x, const ModelParams& params);
/// Kink energy on [-L, L].
double kink_energy(double half_length, const ModelParams& params);
double kink_energy_infinite(const ModelParams& params);

}  // namespace coarsekit
