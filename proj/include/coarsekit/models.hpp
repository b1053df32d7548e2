#pragma once

// Analytic coarsening-rate models: the closed-form logarithmic period law and
// the eigenvalue ODE dp/dt = factor * lambda_max(p) * p.

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "coarsekit/core_model.hpp"
#include "coarsekit/energy_map.hpp"
#include "coarsekit/spectral.hpp"

namespace coarsekit {

/// p(t) = p0 + w ln(1 + (16 beta^2 (t - t0) / kappa) exp(-p0 / w)),
/// w = sqrt(2 kappa / beta).
double langer_period(double t, double p0, double t0, const ModelParams& params);

/// Piecewise cubic Hermite interpolant with Fritsch-Carlson slopes; never
/// overshoots the data.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);
  double operator()(double x) const;
  double front() const { return x_.front(); }
  double back() const { return x_.back(); }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> d_;
};

enum class ModelKind { langer, eigen, eigen_half };
std::string_view model_name(ModelKind kind);

struct CurveSample {
  double t;
  double p;
  double e;
  bool flagged = false;
};

struct ModelCurve {
  ModelKind kind;
  double t0;
  double p0;
  std::vector<CurveSample> samples;
};

/// Step size control for the eigenvalue ODE: each step grows ln p by at most
/// `growth_fraction`, and no step is longer than `max_step`.
struct StepControl {
  double growth_fraction = 2e-3;
  double max_step = 1.0;
};

/// Growth-rate function lambda_max(p) built from an eigenvalue table:
/// monotone cubic in p, clamped to the first value below the table and to 0
/// beyond its last period.
class GrowthRate {
 public:
  explicit GrowthRate(const EigenTable& table);
  /// Constant rate (for tests and synthetic runs).
  static GrowthRate constant(double lambda);
  double operator()(double p) const;
  /// Smallest admissible period (the table's p_min; 0 for a constant rate).
  double p_min() const { return p_min_; }

 private:
  GrowthRate() = default;
  std::optional<MonotoneCubic> cubic_;
  double first_ = 0.0;
  double p_min_ = 0.0;
};

ModelCurve langer_curve(double p0, double t0, std::span<const double> times,
                        const ModelParams& params);

/// Integrates with classical RK4; `times` must be ascending and >= t0.
ModelCurve eigen_model_integrate(double p0, double t0, std::span<const double> times,
                                 const GrowthRate& rate, double factor,
                                 const StepControl& control = {});

/// Attaches E = envelope(p) to each sample; periods outside the table are
/// clamped to its range and flagged.
ModelCurve model_energy_curve(ModelCurve curve, const EnergyPeriodTable& table);

void write_curves_csv(std::ostream& out, std::span<const ModelCurve> curves);

}  // namespace coarsekit
