#include <doctest.h>

#include <cmath>
#include <numbers>

#include "coarsekit/core_model.hpp"
#include "coarsekit/errors.hpp"

using namespace coarsekit;

TEST_SUITE("core_model") {

TEST_CASE("potential values at the well and the barrier") {
  const ModelParams p;
  CHECK(potential(0.0, 0, p) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(potential(p.binodal(), 0, p) == doctest::Approx(0.0));
  CHECK(potential(p.binodal(), 1, p) == doctest::Approx(0.0));
  CHECK(potential(0.0, 2, p) == doctest::Approx(-1.0));
  const ModelParams q{.alpha = 2.0, .beta = 3.0, .kappa = 1e-3, .half_length = 1.0};
  CHECK(potential(0.0, 0, q) == doctest::Approx(9.0 / 8.0));
  CHECK(potential(0.0, 2, q) == doctest::Approx(-3.0));
}

TEST_CASE("potential derivatives match centered differences") {
  const ModelParams p{.alpha = 1.3, .beta = 0.7, .kappa = 1e-3, .half_length = 1.0};
  const double b = p.binodal();
  const double h = 1e-5;
  for (int order = 1; order <= 3; ++order) {
    for (int i = 0; i < 100; ++i) {
      const double phi = -2.0 * b + 4.0 * b * i / 99.0;
      const double fd = (potential(phi + h, order - 1, p) - potential(phi - h, order - 1, p)) / (2 * h);
      CHECK(std::abs(potential(phi, order, p) - fd) <= 1e-8);
    }
  }
  CHECK_THROWS_AS(potential(0.0, 4, p), DomainError);
}

TEST_CASE("dispersion relation") {
  const ModelParams p;
  const auto c = closed_form_constants(p);
  CHECK(dispersion(0.0, p) == 0.0);
  CHECK(c.xi_s == doctest::Approx(22.360679775).epsilon(1e-10));
  CHECK(dispersion(c.xi_s, p) == doctest::Approx(250.0).epsilon(1e-12));
  for (double xi : {0.5, 3.0, 17.0, 40.0}) CHECK(dispersion(xi, p) == dispersion(-xi, p));
  // Coarse scan confirms the maximizer.
  double best = 0.0;
  double arg = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    const double xi = 50.0 * i / 100000.0;
    if (dispersion(xi, p) > best) {
      best = dispersion(xi, p);
      arg = xi;
    }
  }
  CHECK(arg == doctest::Approx(c.xi_s).epsilon(1e-3));
}

TEST_CASE("closed-form constants") {
  const ModelParams p;
  const auto c = closed_form_constants(p);
  CHECK(c.p_min == doctest::Approx(2 * std::numbers::pi * std::sqrt(1e-3)).epsilon(1e-14));
  CHECK(c.p_min == doctest::Approx(0.19869).epsilon(1e-4));
  CHECK(c.p_s == doctest::Approx(std::sqrt(2.0) * c.p_min).epsilon(1e-14));
  CHECK(std::abs(c.p_s - 0.2810) <= 1e-3);
  CHECK(c.e_max == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(c.lambda_s == doctest::Approx(250.0));
  CHECK(2 * c.e_min == doctest::Approx(0.0596).epsilon(1e-3));
  CHECK(std::isnan(c.a_s));

  const ModelParams q{.alpha = 2.0, .beta = 0.5, .kappa = 1e-3, .half_length = 3.0};
  CHECK(closed_form_constants(q).e_max ==
        doctest::Approx(q.half_length * q.beta * q.beta / (2 * q.alpha)));
}

TEST_CASE("spinodal amplitude and energy") {
  const ModelParams p;
  const auto c = derived_constants(p);
  CHECK(c.a_s > 0.0);
  CHECK(c.a_s < p.binodal());
  CHECK(c.a_s == doctest::Approx(0.80078).epsilon(1e-4));
  CHECK(c.e_s == doctest::Approx(0.42191).epsilon(1e-4));
  CHECK(c.e_s < c.e_max);
  for (double kappa : {1e-4, 1e-5}) {
    ModelParams q = p;
    q.kappa = kappa;
    CHECK(std::abs(derived_constants(q).a_s - c.a_s) <= 1e-10);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((ModelParams{.alpha = 0.0}.validate()), DomainError);
  CHECK_THROWS_AS((ModelParams{.beta = -1.0}.validate()), DomainError);
  CHECK_THROWS_AS((ModelParams{.kappa = 0.0}.validate()), DomainError);
  CHECK_THROWS_AS((ModelParams{.half_length = std::nan("")}.validate()), DomainError);
  CHECK_NOTHROW(ModelParams{}.validate());
}

}
