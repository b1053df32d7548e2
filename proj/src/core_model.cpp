#include "coarsekit/core_model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "coarsekit/energy_map.hpp"
#include "coarsekit/errors.hpp"
#include "coarsekit/stationary.hpp"

namespace coarsekit {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string("model parameter ") + name + " must be positive and finite");
  }
}

}  // namespace

void ModelParams::validate() const {
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  require_positive(kappa, "kappa");
  require_positive(half_length, "half_length");
}

double ModelParams::binodal() const { return std::sqrt(beta / alpha); }

double potential(double phi, int order, const ModelParams& params) {
  const double a = params.alpha;
  const double b = params.beta;
  switch (order) {
    case 0: {
      const double d = phi * phi - b / a;
      return 0.25 * a * d * d;
    }
    case 1:
      return a * phi * phi * phi - b * phi;
    case 2:
      return 3.0 * a * phi * phi - b;
    case 3:
      return 6.0 * a * phi;
    default:
      throw DomainError("potential: derivative order must be 0..3");
  }
}

double dispersion(double xi, const ModelParams& params) {
  const double xi2 = xi * xi;
  return -params.kappa * xi2 * xi2 + params.beta * xi2;
}

DerivedConstants closed_form_constants(const ModelParams& params) {
  params.validate();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double pi = std::numbers::pi;
  DerivedConstants c{};
  c.binodal = params.binodal();
  c.p_min = 2.0 * pi * std::sqrt(params.kappa / params.beta);
  c.p_s = 2.0 * pi * std::sqrt(2.0 * params.kappa / params.beta);
  c.xi_s = std::sqrt(params.beta / (2.0 * params.kappa));
  c.lambda_s = params.beta * params.beta / (4.0 * params.kappa);
  c.e_max = 2.0 * params.half_length * potential(0.0, 0, params);
  c.e_min = kink_energy(params.half_length, params);
  c.a_s = nan;
  c.e_s = nan;
  return c;
}

DerivedConstants derived_constants(const ModelParams& params) {
  DerivedConstants c = closed_form_constants(params);
  const PeriodicWave spinodal = wave_from_period(c.p_s, params);
  c.a_s = spinodal.amplitude();
  c.e_s = energy_of_amplitude(spinodal);
  return c;
}

}  // namespace coarsekit
