#include "coarsekit/models.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "coarsekit/csv.hpp"
#include "coarsekit/errors.hpp"

namespace coarsekit {

double langer_period(double t, double p0, double t0, const ModelParams& params) {
  params.validate();
  if (t < t0) throw DomainError("langer_period needs t >= t0");
  const double w = std::sqrt(2.0 * params.kappa / params.beta);
  const double rate = 16.0 * params.beta * params.beta / params.kappa * std::exp(-p0 / w);
  return p0 + w * std::log1p(rate * (t - t0));
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw DomainError("monotone cubic needs >= 2 matching points");
  std::vector<double> delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = x_[i + 1] - x_[i];
    if (!(h > 0.0)) throw DomainError("monotone cubic abscissae must ascend");
    delta[i] = (y_[i + 1] - y_[i]) / h;
  }
  d_.assign(n, 0.0);
  d_.front() = delta.front();
  d_.back() = delta.back();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    d_[i] = delta[i - 1] * delta[i] > 0.0 ? 0.5 * (delta[i - 1] + delta[i]) : 0.0;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (delta[i] == 0.0) {
      d_[i] = d_[i + 1] = 0.0;
      continue;
    }
    const double a = d_[i] / delta[i];
    const double b = d_[i + 1] / delta[i];
    if (a < 0.0) d_[i] = 0.0;
    if (b < 0.0) d_[i + 1] = 0.0;
    const double r = a * a + b * b;
    if (r > 9.0) {
      const double tau = 3.0 / std::sqrt(r);
      d_[i] = tau * a * delta[i];
      d_[i + 1] = tau * b * delta[i];
    }
  }
}

double MonotoneCubic::operator()(double x) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  const double h = x_[i + 1] - x_[i];
  const double s = (x - x_[i]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2.0 * s3 - 3.0 * s2 + 1.0) * y_[i] + (s3 - 2.0 * s2 + s) * h * d_[i] +
         (-2.0 * s3 + 3.0 * s2) * y_[i + 1] + (s3 - s2) * h * d_[i + 1];
}

std::string_view model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::langer:
      return "langer";
    case ModelKind::eigen:
      return "eigen";
    case ModelKind::eigen_half:
      return "eigen_half";
  }
  return "unknown";
}

GrowthRate::GrowthRate(const EigenTable& table) {
  if (table.rows.empty()) throw DomainError("eigenvalue table is empty");
  p_min_ = closed_form_constants(table.params).p_min;
  first_ = table.rows.front().lambda;
  if (table.rows.size() == 1) return;
  std::vector<double> p;
  std::vector<double> lambda;
  for (const auto& r : table.rows) {
    p.push_back(r.p);
    lambda.push_back(r.lambda);
  }
  cubic_.emplace(std::move(p), std::move(lambda));
}

GrowthRate GrowthRate::constant(double lambda) {
  GrowthRate g;
  g.first_ = lambda;
  return g;
}

double GrowthRate::operator()(double p) const {
  if (!cubic_) return first_;
  if (p <= cubic_->front()) return first_;
  if (p > cubic_->back()) return 0.0;
  return std::max(0.0, (*cubic_)(p));
}

ModelCurve langer_curve(double p0, double t0, std::span<const double> times,
                        const ModelParams& params) {
  ModelCurve curve{ModelKind::langer, t0, p0, {}};
  for (double t : times) curve.samples.push_back({t, langer_period(t, p0, t0, params), 0.0});
  return curve;
}

ModelCurve eigen_model_integrate(double p0, double t0, std::span<const double> times,
                                 const GrowthRate& rate, double factor,
                                 const StepControl& control) {
  if (!(p0 > 0.0) || p0 < rate.p_min() * (1.0 - 1e-12)) {
    throw DomainError("eigenvalue model needs p0 >= p_min");
  }
  if (!(factor > 0.0)) throw DomainError("eigenvalue model factor must be positive");
  if (!(control.growth_fraction > 0.0 && control.max_step > 0.0)) {
    throw DomainError("invalid step control");
  }
  const auto f = [&](double p) { return factor * rate(p) * p; };

  ModelCurve curve{factor < 1.0 ? ModelKind::eigen_half : ModelKind::eigen, t0, p0, {}};
  double t = t0;
  double p = p0;
  for (double target : times) {
    if (target < t) throw DomainError("model output times must ascend from t0");
    while (t < target) {
      const double g = factor * rate(p);
      double h = g > 0.0 ? std::min(control.max_step, control.growth_fraction / g)
                         : control.max_step;
      h = std::min(h, target - t);
      const double k1 = f(p);
      const double k2 = f(p + 0.5 * h * k1);
      const double k3 = f(p + 0.5 * h * k2);
      const double k4 = f(p + h * k3);
      p += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t = (target - t - h <= 1e-14 * std::max(1.0, std::abs(target))) ? target : t + h;
    }
    curve.samples.push_back({target, p, 0.0});
  }
  return curve;
}

ModelCurve model_energy_curve(ModelCurve curve, const EnergyPeriodTable& table) {
  if (table.rows.empty()) throw DomainError("empty energy table");
  const double lo = table.rows.front().p;
  const double hi = table.rows.back().p;
  for (auto& s : curve.samples) {
    const double p = std::clamp(s.p, lo, hi);
    s.flagged = p != s.p;
    s.e = energy_envelope(p, table);
  }
  return curve;
}

void write_curves_csv(std::ostream& out, std::span<const ModelCurve> curves) {
  out << "t,p,E,model\n";
  for (const auto& c : curves) {
    for (const auto& s : c.samples) {
      out << csv::num(s.t) << ',' << csv::num(s.p) << ',' << csv::num(s.e) << ','
          << model_name(c.kind) << '\n';
    }
  }
}

}  // namespace coarsekit
