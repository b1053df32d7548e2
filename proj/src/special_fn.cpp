#include "coarsekit/special_fn.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "coarsekit/errors.hpp"

namespace coarsekit {

namespace {

constexpr double kAgmTolerance = 1e-17;
constexpr int kMaxLanden = 64;

}  // namespace

EllipticModulus EllipticModulus::from_k(double k) {
  if (!(k >= 0.0 && k <= 1.0)) throw DomainError("elliptic modulus must lie in [0, 1]");
  return EllipticModulus(k, std::sqrt((1.0 - k) * (1.0 + k)));
}

EllipticModulus EllipticModulus::from_complement(double kc) {
  if (!(kc >= 0.0 && kc <= 1.0)) throw DomainError("complementary modulus must lie in [0, 1]");
  return EllipticModulus(std::sqrt((1.0 - kc) * (1.0 + kc)), kc);
}

double complete_elliptic_k(const EllipticModulus& m) {
  if (m.complement() == 0.0) throw DomainError("K(k) diverges at k = 1");
  double a = 1.0;
  double b = m.complement();
  for (int i = 0; i < kMaxLanden && std::abs(a - b) > kAgmTolerance * a; ++i) {
    const double next = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = next;
  }
  return std::numbers::pi / (a + b);
}

double complete_elliptic_k(double k) { return complete_elliptic_k(EllipticModulus::from_k(k)); }

JacobiEvaluator::JacobiEvaluator(const EllipticModulus& m) : modulus_(m) {
  if (m.k() == 0.0 || m.complement() == 0.0) return;
  double a = 1.0;
  double b = m.complement();
  double c = m.k();
  double scale = 1.0;
  for (int i = 0; i < kMaxLanden && std::abs(c) > kAgmTolerance * a; ++i) {
    c = 0.5 * (a - b);
    const double next = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = next;
    ratios_.push_back(c / a);
    scale *= 2.0;
  }
  scale_ = scale * a;
}

JacobiTriple JacobiEvaluator::operator()(double u) const {
  const double k = modulus_.k();
  if (k == 0.0) return {std::sin(u), std::cos(u), 1.0};
  if (modulus_.complement() == 0.0) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }
  double phi = scale_ * u;
  for (auto it = ratios_.rbegin(); it != ratios_.rend(); ++it) {
    phi = 0.5 * (phi + std::asin(*it * std::sin(phi)));
  }
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  const double kc = modulus_.complement();
  return {sn, cn, std::sqrt(kc * kc + k * k * cn * cn)};
}

JacobiTriple jacobi_elliptic(double u, const EllipticModulus& m) { return JacobiEvaluator(m)(u); }

double jacobi_sn(double u, double k) { return jacobi_elliptic(u, EllipticModulus::from_k(k)).sn; }

}  // namespace coarsekit
