#pragma once

// Pseudo-spectral Cahn-Hilliard integrator on the periodic grid [-L, L):
// linearly stabilized semi-implicit Euler, cubic term by co-location, upper
// half of the modes dealiased.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "coarsekit/core_model.hpp"

namespace coarsekit {

struct SolverConfig {
  std::size_t n_grid = 2048;
  double dt = 1e-3;
  /// Stabilization constant s; NaN selects 2 beta.
  double stabilization = std::numeric_limits<double>::quiet_NaN();
  std::size_t record_stride = 100;
  std::uint64_t seed = 0;
  double sigma = 0.1;
  double precondition_fraction = 0.99;
  double precondition_tol = 1e-4;

  double stabilization_for(const ModelParams& params) const;
  void validate(const ModelParams& params) const;
};

/// Real-to-complex FFT pair and the per-mode tables for one grid size.
class SpectralGrid {
 public:
  SpectralGrid(std::size_t n, double half_length);
  ~SpectralGrid();
  SpectralGrid(const SpectralGrid&) = delete;
  SpectralGrid& operator=(const SpectralGrid&) = delete;

  std::size_t size() const { return n_; }
  std::size_t modes() const { return n_ / 2 + 1; }
  double half_length() const { return half_length_; }
  double spacing() const { return 2.0 * half_length_ / static_cast<double>(n_); }
  /// Angular wavenumber pi m / L of half-spectrum index m.
  double wavenumber(std::size_t m) const;
  /// True for modes zeroed by dealiasing (m >= N/4).
  bool dealiased(std::size_t m) const { return m >= n_ / 4; }
  double x(std::size_t j) const;
  /// Parseval weights times xi^2: sum w |hat|^2 = N^2 * sum over all modes of
  /// |c_k|^2 xi_k^2 for the normalized coefficients c_k.
  std::span<const double> gradient_weights() const { return gradient_weights_; }

  /// Unnormalized forward transform (N/2+1 outputs).
  void forward(std::span<const double> values, std::span<std::complex<double>> hat) const;
  /// Inverse transform including the 1/N factor; `hat` is not modified.
  void inverse(std::span<const std::complex<double>> hat, std::span<double> values) const;

 private:
  struct Plans;
  std::size_t n_;
  double half_length_;
  std::vector<double> gradient_weights_;
  std::unique_ptr<Plans> plans_;
};

/// Field samples with their spectrum kept consistent. The spectrum is the
/// authoritative state during time stepping.
class FieldState {
 public:
  FieldState(std::shared_ptr<const SpectralGrid> grid, const ModelParams& params,
             std::vector<double> values, double t = 0.0);

  static FieldState from_spectrum(std::shared_ptr<const SpectralGrid> grid,
                                  const ModelParams& params,
                                  std::vector<std::complex<double>> hat, double t);

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  const std::vector<std::complex<double>>& spectrum() const { return hat_; }
  double time() const { return t_; }
  const ModelParams& params() const { return params_; }
  const SpectralGrid& grid() const { return *grid_; }
  std::shared_ptr<const SpectralGrid> grid_ptr() const { return grid_; }

 private:
  FieldState() = default;
  std::shared_ptr<const SpectralGrid> grid_;
  ModelParams params_;
  std::vector<double> values_;
  std::vector<std::complex<double>> hat_;
  double t_ = 0.0;
};

/// Normal(0, sigma) samples from a seeded generator, upper modes removed,
/// mean subtracted.
FieldState init_random_field(std::uint64_t seed, std::size_t n, const ModelParams& params,
                             double sigma = 0.1);

/// The generator behind init_random_field: mt19937_64 seeded with `seed`,
/// Box-Muller (basic form, both outputs used).
std::vector<double> normal_samples(std::uint64_t seed, std::size_t n, double sigma);

double discrete_energy(const FieldState& state);
double discrete_mass(const FieldState& state);
/// Half-spectrum index m >= 1 of the largest |hat|.
std::size_t dominant_mode(const FieldState& state);
double dominant_wavenumber(const FieldState& state);

/// Reusable stepping workspace for one grid and parameter set.
class Stepper {
 public:
  Stepper(std::shared_ptr<const SpectralGrid> grid, const ModelParams& params,
          double stabilization);

  /// One step of size dt. Throws NumericalError on non-finite values.
  FieldState step(const FieldState& state, double dt) const;

  double stabilization() const { return s_; }

 private:
  struct Factors {
    double dt;
    std::vector<double> keep;
    std::vector<double> forcing;
  };
  const Factors& factors_for(double dt) const;

  std::shared_ptr<const SpectralGrid> grid_;
  ModelParams params_;
  double s_;
  mutable Factors cache_;
  mutable std::vector<double> work_;
  mutable std::vector<std::complex<double>> nl_hat_;
};

FieldState step(const FieldState& state, double dt, const SolverConfig& config);

struct PreconditionResult {
  FieldState state;
  std::size_t accepted_steps;
  std::size_t rejected_steps;
};

/// Step until the energy lies in [target - tol, target]; steps that overshoot
/// below the window are discarded and retried with half the time step.
PreconditionResult precondition_to_energy(const FieldState& state, const Stepper& stepper,
                                          double target, double tol, double dt);

struct TrajectoryPoint {
  double t;
  double e;
  double mass;
  std::size_t dominant_mode;
};

struct SimulationResult {
  std::vector<TrajectoryPoint> trajectory;
  FieldState final_state;
  double preconditioned_energy;
  double precondition_time;
  std::size_t max_energy_increase_step = 0;
  double max_energy_increase = 0.0;
};

/// Seeded init, precondition to the configured fraction of e_max, then
/// fixed-dt evolution to t_end; time restarts at 0 after preconditioning.
SimulationResult run_simulation(const ModelParams& params, const SolverConfig& config,
                                double t_end);

void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryPoint> trajectory);
std::vector<TrajectoryPoint> read_trajectory_csv(std::istream& in);

}  // namespace coarsekit
