#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "coarsekit/errors.hpp"
#include "coarsekit/models.hpp"
#include "fixtures.hpp"

using namespace coarsekit;

namespace {

EigenTable synthetic_table(const ModelParams& p) {
  EigenTable t{.params = p, .kappa0 = p.kappa, .rows = {}};
  const double p_min = closed_form_constants(p).p_min;
  for (int i = 0; i < 20; ++i) {
    const double period = p_min + 0.04 * i;
    t.rows.push_back({0.0, 0.0, period, 250.0 * std::exp(-8.0 * (period - p_min))});
  }
  return t;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

}  // namespace

TEST_SUITE("models") {

TEST_CASE("logarithmic law") {
  const ModelParams p;
  const double w = std::sqrt(2 * p.kappa / p.beta);
  CHECK(langer_period(3.0, 0.4, 3.0, p) == doctest::Approx(0.4));
  double prev = 0.0;
  for (double t : {3.0, 3.5, 10.0, 1e3, 1e6}) {
    const double v = langer_period(t, 0.4, 3.0, p);
    CHECK(v >= prev);
    prev = v;
  }
  const double T = 1e6;
  const double slope = (langer_period(2 * T, 0.3, 0.0, p) - langer_period(T, 0.3, 0.0, p)) / std::log(2.0);
  CHECK(slope == doctest::Approx(w).epsilon(1e-2));
  CHECK_THROWS_AS(langer_period(1.0, 0.4, 2.0, p), DomainError);
}

TEST_CASE("monotone cubic") {
  const MonotoneCubic lin({0.0, 1.0, 3.0}, {1.0, 3.0, 7.0});
  CHECK(lin(0.5) == doctest::Approx(2.0));
  CHECK(lin(2.0) == doctest::Approx(5.0));

  const std::vector<double> x{0, 1, 2, 3, 4};
  const std::vector<double> y{10, 9.9, 2, 1.9, 0};
  const MonotoneCubic c(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(c(x[i]) == y[i]);
  double prev = 11.0;
  for (int i = 0; i <= 400; ++i) {
    const double v = c(4.0 * i / 400);
    CHECK(v <= prev + 1e-14);
    CHECK(v >= 0.0);
    prev = v;
  }
  CHECK_THROWS(MonotoneCubic({0.0, 0.0}, {1.0, 2.0}));
}

TEST_CASE("growth rate clamps outside the table") {
  const ModelParams p;
  const auto t = synthetic_table(p);
  const GrowthRate g(t);
  CHECK(g(0.01) == t.rows.front().lambda);
  CHECK(g(t.rows.back().p + 0.1) == 0.0);
  CHECK(g(t.rows[5].p) == doctest::Approx(t.rows[5].lambda));
  CHECK(g.p_min() == t.rows.front().p);
  CHECK(GrowthRate::constant(3.0)(123.0) == 3.0);
  CHECK_THROWS_AS(GrowthRate(EigenTable{.params = p, .kappa0 = p.kappa, .rows = {}}), DomainError);
}

TEST_CASE("constant rate reproduces exponential growth") {
  const auto rate = GrowthRate::constant(0.7);
  const auto times = linspace(2.0, 3.0, 11);
  for (double factor : {1.0, 0.5}) {
    const auto curve = eigen_model_integrate(0.3, 2.0, times, rate, factor);
    REQUIRE(curve.samples.size() == times.size());
    CHECK(curve.kind == (factor < 1 ? ModelKind::eigen_half : ModelKind::eigen));
    for (const auto& s : curve.samples) {
      CHECK(s.p == doctest::Approx(0.3 * std::exp(0.7 * factor * (s.t - 2.0))).epsilon(1e-6));
    }
  }
}

TEST_CASE("eigen model properties") {
  const ModelParams p;
  const GrowthRate rate(synthetic_table(p));
  const auto times = linspace(0.0, 50.0, 101);
  const double p0 = 0.25;
  const auto full = eigen_model_integrate(p0, 0.0, times, rate, 1.0);
  const auto half = eigen_model_integrate(p0, 0.0, times, rate, 0.5);
  CHECK(full.samples.front().p == p0);
  for (std::size_t i = 1; i < times.size(); ++i) {
    CHECK(full.samples[i].p >= full.samples[i - 1].p);
    CHECK(half.samples[i].p <= full.samples[i].p);
  }
  // Restarting from an intermediate state lands on the same trajectory.
  const auto mid = full.samples[40];
  const std::vector<double> rest(times.begin() + 40, times.end());
  const auto again = eigen_model_integrate(mid.p, mid.t, rest, rate, 1.0);
  CHECK(again.samples.back().p == doctest::Approx(full.samples.back().p).epsilon(1e-8));

  CHECK_THROWS_AS(eigen_model_integrate(0.1, 0.0, times, rate, 1.0), DomainError);
  const std::vector<double> early{-1.0};
  CHECK_THROWS_AS(eigen_model_integrate(p0, 0.0, early, rate, 1.0), DomainError);
}

TEST_CASE("model energies come from the envelope") {
  const auto& table = testing_support::default_energy_table();
  const auto c = derived_constants(table.params);
  const auto times = linspace(0.0, 200.0, 201);
  auto curve = model_energy_curve(
      eigen_model_integrate(c.p_s, 0.0, times, GrowthRate::constant(0.05), 1.0), table);
  CHECK(curve.samples.front().e == doctest::Approx(c.e_s).epsilon(1e-5));
  for (std::size_t i = 1; i < curve.samples.size(); ++i) {
    CHECK(curve.samples[i].e <= curve.samples[i - 1].e);
  }
  // Past the table the curve sits on the last tabulated energy.
  CHECK(curve.samples.back().flagged);
  CHECK(curve.samples.back().e == doctest::Approx(table.rows.back().e));
  CHECK(curve.samples.back().e <= 1.01 * kink_energy(table.params.half_length, table.params));

  const auto langer = model_energy_curve(langer_curve(c.p_s, 0.0, times, table.params), table);
  for (std::size_t i = 1; i < langer.samples.size(); ++i) {
    CHECK(langer.samples[i].e <= langer.samples[i - 1].e);
  }
}

TEST_CASE("curves csv") {
  const ModelParams p;
  const std::vector<double> times{0.0, 1.0};
  const std::vector<ModelCurve> curves{langer_curve(0.3, 0.0, times, p)};
  std::ostringstream out;
  write_curves_csv(out, curves);
  const std::string s = out.str();
  CHECK(s.rfind("t,p,E,model\n", 0) == 0);
  CHECK(s.find(",langer") != std::string::npos);
}

}
