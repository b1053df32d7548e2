#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "coarsekit/errors.hpp"
#include "coarsekit/special_fn.hpp"

using namespace coarsekit;

namespace {

double k_by_quadrature(double k) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(
      [k](double s, double sc) {
        // sc = 1 - s near the right endpoint keeps 1 - s^2 accurate.
        const double one_minus = s > 0.5 ? sc * (1.0 + s) : (1.0 - s) * (1.0 + s);
        return 1.0 / std::sqrt(one_minus * (1.0 - k * k * s * s));
      },
      0.0, 1.0);
}

}  // namespace

TEST_SUITE("special_fn") {

TEST_CASE("complete elliptic integral") {
  CHECK(complete_elliptic_k(0.0) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
  CHECK(complete_elliptic_k(0.5) == doctest::Approx(1.6857503548125961).epsilon(1e-14));
  for (double k : {0.1, 0.5, 0.9, 0.99, 0.999999}) {
    const double oracle = k_by_quadrature(k);
    CHECK(std::abs(complete_elliptic_k(k) - oracle) <= 1e-11 * oracle);
    CHECK(std::abs(complete_elliptic_k(k) - boost::math::ellint_1(k)) <= 1e-13 * oracle);
  }
  CHECK(complete_elliptic_k(1.0 - 1e-12) > 14.0);
  CHECK_THROWS_AS(complete_elliptic_k(1.0), DomainError);
  CHECK_THROWS_AS(complete_elliptic_k(1.5), DomainError);
  CHECK_THROWS_AS(complete_elliptic_k(-0.1), DomainError);
}

TEST_CASE("tiny complementary modulus keeps full precision") {
  for (double kc : {1e-6, 1e-10, 1e-30, 1e-150}) {
    const double lg = std::log(4.0 / kc);
    const double asymptotic = lg + 0.25 * kc * kc * (lg - 1.0);
    CHECK(complete_elliptic_k(EllipticModulus::from_complement(kc)) ==
          doctest::Approx(asymptotic).epsilon(1e-14));
  }
}

TEST_CASE("sn degenerate moduli") {
  for (double u : {0.3, 1.0, 2.0}) {
    CHECK(std::abs(jacobi_sn(u, 0.0) - std::sin(u)) <= 1e-12);
    CHECK(std::abs(jacobi_sn(u, 1.0) - std::tanh(u)) <= 1e-12);
  }
  CHECK(jacobi_sn(complete_elliptic_k(0.7), 0.7) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sn, cn, dn against a library implementation and identities") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> ku(0.0, 1.0);
  std::uniform_real_distribution<double> uu(-20.0, 20.0);
  for (int i = 0; i < 500; ++i) {
    const double k = ku(gen);
    const double u = uu(gen);
    const auto m = EllipticModulus::from_k(k);
    const JacobiTriple j = jacobi_elliptic(u, m);
    double cn = 0.0;
    double dn = 0.0;
    const double sn = boost::math::jacobi_elliptic(k, u, &cn, &dn);
    CHECK(std::abs(j.sn - sn) <= 1e-12);
    CHECK(std::abs(j.cn - cn) <= 1e-12);
    CHECK(std::abs(j.dn - dn) <= 1e-12);
    CHECK(std::abs(j.sn * j.sn + j.cn * j.cn - 1.0) <= 1e-11);
    CHECK(std::abs(j.dn * j.dn + k * k * j.sn * j.sn - 1.0) <= 1e-11);
    CHECK(std::abs(jacobi_elliptic(-u, m).sn + j.sn) <= 1e-12);
  }
}

TEST_CASE("sn is periodic with period 4K") {
  for (double k : {0.3, 0.8, 0.999}) {
    const double K = complete_elliptic_k(k);
    for (double u : {0.1, 0.7, 1.9}) {
      CHECK(std::abs(jacobi_sn(u + 4 * K, k) - jacobi_sn(u, k)) <= 1e-12);
    }
  }
}

TEST_CASE("defining integral roundtrip") {
  for (double k : {0.2, 0.7, 0.95}) {
    for (double theta : {0.1, 0.6, 1.2, 1.5}) {
      const double u = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          [k](double z) { return 1.0 / std::sqrt(1.0 - k * k * std::sin(z) * std::sin(z)); },
          0.0, theta, 10, 1e-14);
      CHECK(std::abs(jacobi_sn(u, k) - std::sin(theta)) <= 1e-9);
    }
  }
}

TEST_CASE("cached evaluator agrees with the one-shot routine") {
  const auto m = EllipticModulus::from_complement(1e-8);
  const JacobiEvaluator eval(m);
  for (double u : {-3.0, 0.0, 0.5, 8.0, 19.5}) {
    const auto a = eval(u);
    const auto b = jacobi_elliptic(u, m);
    CHECK(a.sn == b.sn);
    CHECK(a.cn == b.cn);
    CHECK(a.dn == b.dn);
  }
}

TEST_CASE("modulus validation") {
  CHECK_THROWS_AS(EllipticModulus::from_k(1.0000001), DomainError);
  CHECK_THROWS_AS(EllipticModulus::from_complement(-1e-3), DomainError);
  const auto m = EllipticModulus::from_k(0.6);
  CHECK(m.complement() == doctest::Approx(0.8).epsilon(1e-15));
}

}
