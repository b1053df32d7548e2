#include "coarsekit/stationary.hpp"

#include <cmath>
#include <numbers>

#include "coarsekit/errors.hpp"
#include "coarsekit/quadrature.hpp"

namespace coarsekit {

namespace {

constexpr std::size_t kQuadratureNodes = 256;

// k' from the binodal gap: k'^2 = 2 alpha g (b + a) / (2 beta - alpha a^2).
EllipticModulus modulus_for(double a, double gap, const ModelParams& params) {
  const double denom = 2.0 * params.beta - params.alpha * a * a;
  const double kc2 = 2.0 * params.alpha * gap * (params.binodal() + a) / denom;
  return EllipticModulus::from_complement(std::sqrt(std::min(1.0, kc2)));
}

void check_amplitude(double a, const ModelParams& params) {
  if (!(a > 0.0 && a < params.binodal())) {
    throw DomainError("wave amplitude must lie in (0, binodal)");
  }
}

}  // namespace

PeriodicWave::PeriodicWave(double a, double gap, const ModelParams& params)
    : params_(params),
      amplitude_(a),
      gap_(gap),
      scale_(std::sqrt(params.alpha / (2.0 * params.kappa)) *
             std::sqrt(2.0 * params.beta / params.alpha - a * a)),
      jacobi_(modulus_for(a, gap, params)),
      quarter_k_(complete_elliptic_k(jacobi_.modulus())) {}

PeriodicWave PeriodicWave::from_amplitude(double a, const ModelParams& params) {
  params.validate();
  check_amplitude(a, params);
  return PeriodicWave(a, params.binodal() - a, params);
}

PeriodicWave PeriodicWave::from_gap(double gap, const ModelParams& params) {
  params.validate();
  const double b = params.binodal();
  if (!(gap > 0.0 && gap < b)) throw DomainError("binodal gap must lie in (0, binodal)");
  return PeriodicWave(b - gap, gap, params);
}

double PeriodicWave::operator()(double x) const {
  return amplitude_ * jacobi_(scale_ * x).sn;
}

double PeriodicWave::slope(double x) const {
  const JacobiTriple j = jacobi_(scale_ * x);
  return amplitude_ * scale_ * j.cn * j.dn;
}

double PeriodicWave::curvature(double x) const {
  return potential((*this)(x), 1, params_) / params_.kappa;
}

PeriodicWave::Sample PeriodicWave::sample(double x) const {
  const JacobiTriple j = jacobi_(scale_ * x);
  return {amplitude_ * j.sn, amplitude_ * scale_ * j.cn * j.dn};
}

double wave_period(double a, const ModelParams& params, PeriodMethod method) {
  if (method == PeriodMethod::elliptic) return PeriodicWave::from_amplitude(a, params).period();

  params.validate();
  check_amplitude(a, params);
  // With y = a sin(t): F(y) - F(a) = (alpha/4) a^2 cos^2(t) (2 beta/alpha - a^2 (1 + sin^2 t)),
  // and dy = a cos(t) dt cancels the square-root singularity at y = a.
  const double c = params.alpha / (2.0 * params.kappa);
  const double two_b2 = 2.0 * params.beta / params.alpha;
  const auto integrand = [&](double t) {
    const double s = std::sin(t);
    return 1.0 / std::sqrt(c * (two_b2 - a * a * (1.0 + s * s)));
  };
  return 4.0 * integrate_gl(integrand, 0.0, 0.5 * std::numbers::pi, kQuadratureNodes);
}

double period_derivative(double a, const ModelParams& params) {
  params.validate();
  check_amplitude(a, params);
  const double al = params.alpha;
  const double be = params.beta;
  const double root2k = std::sqrt(2.0 * params.kappa);
  const double drop0 = potential(0.0, 0, params) - potential(a, 0, params);

  // (F'(y) - F'(a)) / (F(y) - F(a))^{3/2} dy with y = a sin(t) becomes
  // -Q / ((1 + sin t) (alpha/4)^{3/2} a D^{3/2}) dt, Q = alpha (y^2 + a y + a^2) - beta,
  // D = 2 beta/alpha - a^2 - y^2.
  const double c32 = std::pow(0.25 * al, 1.5);
  const auto integrand = [&](double t) {
    const double s = std::sin(t);
    const double y = a * s;
    const double q = al * (y * y + a * y + a * a) - be;
    const double d = 2.0 * be / al - a * a - y * y;
    return -q / ((1.0 + s) * c32 * a * d * std::sqrt(d));
  };
  const double integral = integrate_gl(integrand, 0.0, 0.5 * std::numbers::pi, kQuadratureNodes);
  return 2.0 * root2k / std::sqrt(drop0) - root2k * integral;
}

PeriodicWave wave_from_period(double p, const ModelParams& params) {
  params.validate();
  const double b = params.binodal();
  const double p_min = 2.0 * std::numbers::pi * std::sqrt(params.kappa / params.beta);
  if (!(p > p_min) || !std::isfinite(p)) throw DomainError("no periodic wave with period <= p_min");

  // Bisection in a on the lower half of the amplitude range and in the gap
  // b - a on the upper half, so both ends keep relative precision.
  auto bisect = [](double lo, double hi, auto&& below) {
    for (int i = 0; i < 400 && hi - lo > 1e-15 * hi; ++i) {
      const double mid = hi > 4.0 * lo ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
      (below(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  const double half = 0.5 * b;
  if (p <= PeriodicWave::from_amplitude(half, params).period()) {
    const double a = bisect(1e-200 * b, half, [&](double v) {
      return PeriodicWave::from_amplitude(v, params).period() < p;
    });
    return PeriodicWave::from_amplitude(a, params);
  }
  if (PeriodicWave::from_gap(1e-300 * b, params).period() < p) {
    throw DomainError("period beyond the representable range of periodic waves");
  }
  const double gap = bisect(1e-300 * b, half, [&](double g) {
    return PeriodicWave::from_gap(g, params).period() >= p;
  });
  return PeriodicWave::from_gap(gap, params);
}

double amplitude_from_period(double p, const ModelParams& params) {
  return wave_from_period(p, params).amplitude();
}

double kink_profile(double x, const ModelParams& params) {
  return params.binodal() * std::tanh(std::sqrt(params.beta / (2.0 * params.kappa)) * x);
}

double kink_energy(double half_length, const ModelParams& params) {
  if (!(half_length > 0.0)) throw DomainError("kink energy needs L > 0");
  const double k_l = kink_profile(half_length, params);
  return std::sqrt(2.0 * params.kappa * params.alpha) * k_l *
         (params.beta / params.alpha - k_l * k_l / 3.0);
}

double kink_energy_infinite(const ModelParams& params) {
  return (2.0 / 3.0) * (params.beta * params.beta / params.alpha) *
         std::sqrt(2.0 * params.kappa / params.beta);
}

}  // namespace coarsekit
