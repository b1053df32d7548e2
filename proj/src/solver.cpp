#include "coarsekit/solver.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <istream>
#include <mutex>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include "coarsekit/csv.hpp"
#include "coarsekit/errors.hpp"
#include "coarsekit/kernels.hpp"

namespace coarsekit {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

double SolverConfig::stabilization_for(const ModelParams& params) const {
  return std::isnan(stabilization) ? 2.0 * params.beta : stabilization;
}

void SolverConfig::validate(const ModelParams& params) const {
  params.validate();
  if (!is_power_of_two(n_grid) || n_grid < 64) {
    throw DomainError("n_grid must be a power of two >= 64");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
  if (!(stabilization_for(params) >= 2.0 * params.beta)) {
    throw DomainError("stabilization must be at least 2 beta");
  }
  if (record_stride == 0) throw DomainError("record_stride must be positive");
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  if (!(precondition_fraction > 0.0 && precondition_fraction <= 1.0)) {
    throw DomainError("precondition_fraction must lie in (0, 1]");
  }
  if (!(precondition_tol > 0.0)) throw DomainError("precondition_tol must be positive");
}

struct SpectralGrid::Plans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward != nullptr) fftw_destroy_plan(forward);
    if (inverse != nullptr) fftw_destroy_plan(inverse);
  }
};

SpectralGrid::SpectralGrid(std::size_t n, double half_length)
    : n_(n), half_length_(half_length), plans_(std::make_unique<Plans>()) {
  if (!is_power_of_two(n) || n < 4) throw DomainError("grid size must be a power of two");
  if (!(half_length > 0.0)) throw DomainError("half_length must be positive");

  gradient_weights_.resize(modes());
  for (std::size_t m = 0; m < modes(); ++m) {
    const double xi = wavenumber(m);
    const double mult = (m == 0 || 2 * m == n) ? 1.0 : 2.0;
    gradient_weights_[m] = mult * xi * xi;
  }

  std::vector<double> real(n);
  std::vector<std::complex<double>> cplx(modes());
  auto* c = reinterpret_cast<fftw_complex*>(cplx.data());
  const int size = static_cast<int>(n);
  std::lock_guard lock(planner_mutex());
  plans_->forward = fftw_plan_dft_r2c_1d(size, real.data(), c, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans_->inverse = fftw_plan_dft_c2r_1d(size, c, real.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plans_->forward == nullptr || plans_->inverse == nullptr) {
    throw NumericalError("FFT planning failed");
  }
}

SpectralGrid::~SpectralGrid() = default;

double SpectralGrid::wavenumber(std::size_t m) const {
  return std::numbers::pi * static_cast<double>(m) / half_length_;
}

double SpectralGrid::x(std::size_t j) const {
  return -half_length_ + spacing() * static_cast<double>(j);
}

void SpectralGrid::forward(std::span<const double> values,
                           std::span<std::complex<double>> hat) const {
  if (values.size() != n_ || hat.size() != modes()) throw DomainError("FFT size mismatch");
  fftw_execute_dft_r2c(plans_->forward, const_cast<double*>(values.data()),
                       reinterpret_cast<fftw_complex*>(hat.data()));
}

void SpectralGrid::inverse(std::span<const std::complex<double>> hat,
                           std::span<double> values) const {
  if (values.size() != n_ || hat.size() != modes()) throw DomainError("FFT size mismatch");
  // c2r overwrites its input.
  std::vector<std::complex<double>> scratch(hat.begin(), hat.end());
  fftw_execute_dft_c2r(plans_->inverse, reinterpret_cast<fftw_complex*>(scratch.data()),
                       values.data());
  const double scale = 1.0 / static_cast<double>(n_);
  for (double& v : values) v *= scale;
}

FieldState::FieldState(std::shared_ptr<const SpectralGrid> grid, const ModelParams& params,
                       std::vector<double> values, double t)
    : grid_(std::move(grid)), params_(params), values_(std::move(values)), t_(t) {
  if (!grid_) throw DomainError("field state needs a grid");
  if (values_.size() != grid_->size()) throw DomainError("field size does not match grid");
  hat_.resize(grid_->modes());
  grid_->forward(values_, hat_);
}

FieldState FieldState::from_spectrum(std::shared_ptr<const SpectralGrid> grid,
                                     const ModelParams& params,
                                     std::vector<std::complex<double>> hat, double t) {
  if (!grid) throw DomainError("field state needs a grid");
  if (hat.size() != grid->modes()) throw DomainError("spectrum size does not match grid");
  FieldState s;
  s.grid_ = std::move(grid);
  s.params_ = params;
  s.hat_ = std::move(hat);
  s.values_.resize(s.grid_->size());
  s.grid_->inverse(s.hat_, s.values_);
  s.t_ = t;
  return s;
}

std::vector<double> normal_samples(std::uint64_t seed, std::size_t n, double sigma) {
  std::mt19937_64 gen(seed);
  const auto uniform = [&gen] {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;  // [0, 1)
  };
  std::vector<double> out;
  out.reserve(n + 1);
  while (out.size() < n) {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    out.push_back(sigma * r * std::cos(theta));
    out.push_back(sigma * r * std::sin(theta));
  }
  out.resize(n);
  return out;
}

FieldState init_random_field(std::uint64_t seed, std::size_t n, const ModelParams& params,
                             double sigma) {
  params.validate();
  if (!is_power_of_two(n) || n < 64) throw DomainError("n must be a power of two >= 64");
  auto grid = std::make_shared<const SpectralGrid>(n, params.half_length);
  const std::vector<double> noise = normal_samples(seed, n, sigma);
  std::vector<std::complex<double>> hat(grid->modes());
  grid->forward(noise, hat);
  hat[0] = 0.0;
  for (std::size_t m = 0; m < hat.size(); ++m) {
    if (grid->dealiased(m)) hat[m] = 0.0;
  }
  return FieldState::from_spectrum(std::move(grid), params, std::move(hat), 0.0);
}

double discrete_energy(const FieldState& state) {
  const auto& k = kernels::active_kernels();
  const SpectralGrid& grid = state.grid();
  const ModelParams& p = state.params();
  const double n = static_cast<double>(grid.size());
  const double bulk =
      grid.spacing() * k.bulk_energy_sum(state.values().data(), grid.size(), p.alpha, p.beta);
  const double power = k.weighted_power_sum(state.spectrum().data(),
                                            grid.gradient_weights().data(), grid.modes());
  const double gradient = 0.5 * p.kappa * 2.0 * grid.half_length() * power / (n * n);
  return bulk + gradient;
}

double discrete_mass(const FieldState& state) {
  const auto& v = state.values();
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::size_t dominant_mode(const FieldState& state) {
  const auto& hat = state.spectrum();
  std::size_t best = 1;
  for (std::size_t m = 2; m < hat.size(); ++m) {
    if (std::abs(hat[m]) > std::abs(hat[best])) best = m;
  }
  return best;
}

double dominant_wavenumber(const FieldState& state) {
  return state.grid().wavenumber(dominant_mode(state));
}

Stepper::Stepper(std::shared_ptr<const SpectralGrid> grid, const ModelParams& params,
                 double stabilization)
    : grid_(std::move(grid)), params_(params), s_(stabilization), cache_{0.0, {}, {}} {
  if (!grid_) throw DomainError("stepper needs a grid");
  params_.validate();
  if (!(s_ >= 2.0 * params_.beta)) throw DomainError("stabilization must be at least 2 beta");
  work_.resize(grid_->size());
  nl_hat_.resize(grid_->modes());
}

const Stepper::Factors& Stepper::factors_for(double dt) const {
  if (cache_.dt == dt && !cache_.keep.empty()) return cache_;
  const std::size_t m_count = grid_->modes();
  cache_.dt = dt;
  cache_.keep.assign(m_count, 0.0);
  cache_.forcing.assign(m_count, 0.0);
  for (std::size_t m = 0; m < m_count; ++m) {
    if (grid_->dealiased(m)) continue;
    const double xi2 = grid_->wavenumber(m) * grid_->wavenumber(m);
    const double keep = 1.0 / (1.0 + dt * (params_.kappa * xi2 * xi2 + s_ * xi2));
    cache_.keep[m] = keep;
    cache_.forcing[m] = dt * xi2 * keep;
  }
  return cache_;
}

FieldState Stepper::step(const FieldState& state, double dt) const {
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  if (state.size() != grid_->size()) {
    throw DomainError("state does not match the stepper grid");
  }
  const auto& k = kernels::active_kernels();
  const Factors& f = factors_for(dt);
  k.nonlinear_term(state.values().data(), work_.data(), work_.size(), params_.alpha,
                   params_.beta, s_);
  grid_->forward(work_, nl_hat_);
  std::vector<std::complex<double>> hat = state.spectrum();
  k.spectral_update(hat.data(), nl_hat_.data(), f.keep.data(), f.forcing.data(), hat.size());
  FieldState next = FieldState::from_spectrum(grid_, state.params(), std::move(hat),
                                              state.time() + dt);
  for (double v : next.values()) {
    if (!std::isfinite(v)) throw NumericalError("non-finite field values");
  }
  return next;
}

FieldState step(const FieldState& state, double dt, const SolverConfig& config) {
  config.validate(state.params());
  const Stepper stepper(state.grid_ptr(), state.params(),
                        config.stabilization_for(state.params()));
  return stepper.step(state, dt);
}

PreconditionResult precondition_to_energy(const FieldState& state, const Stepper& stepper,
                                          double target, double tol, double dt) {
  if (!(tol > 0.0) || !(dt > 0.0)) throw DomainError("precondition needs tol > 0 and dt > 0");
  PreconditionResult result{state, 0, 0};
  double e = discrete_energy(state);
  if (e < target - tol) throw DomainError("state energy already below the precondition window");
  double h = dt;
  while (e > target) {
    FieldState candidate = stepper.step(result.state, h);
    const double e_new = discrete_energy(candidate);
    if (e_new < target - tol) {
      ++result.rejected_steps;
      h *= 0.5;
      if (h < 1e-15) throw NumericalError("precondition time step underflow");
      continue;
    }
    result.state = std::move(candidate);
    e = e_new;
    ++result.accepted_steps;
  }
  return result;
}

SimulationResult run_simulation(const ModelParams& params, const SolverConfig& config,
                                double t_end) {
  config.validate(params);
  if (!(t_end >= 0.0)) throw DomainError("t_end must be non-negative");
  const FieldState initial = init_random_field(config.seed, config.n_grid, params, config.sigma);
  const Stepper stepper(initial.grid_ptr(), params, config.stabilization_for(params));
  const double target = config.precondition_fraction * 2.0 * params.half_length *
                        potential(0.0, 0, params);
  PreconditionResult pre =
      precondition_to_energy(initial, stepper, target, config.precondition_tol, config.dt);

  FieldState state = FieldState::from_spectrum(initial.grid_ptr(), params,
                                               pre.state.spectrum(), 0.0);
  SimulationResult result{{}, state, discrete_energy(state), pre.state.time()};
  double e = result.preconditioned_energy;
  result.trajectory.push_back({0.0, e, discrete_mass(state), dominant_mode(state)});

  const auto steps = static_cast<std::size_t>(std::llround(t_end / config.dt));
  for (std::size_t n = 1; n <= steps; ++n) {
    try {
      state = stepper.step(state, config.dt);
    } catch (const NumericalError& err) {
      throw NumericalError("step " + std::to_string(n) + ": " + err.what());
    }
    const double e_new = discrete_energy(state);
    if (e_new - e > result.max_energy_increase) {
      result.max_energy_increase = e_new - e;
      result.max_energy_increase_step = n;
    }
    e = e_new;
    if (n % config.record_stride == 0 || n == steps) {
      const double t = static_cast<double>(n) * config.dt;
      result.trajectory.push_back({t, e, discrete_mass(state), dominant_mode(state)});
    }
  }
  result.final_state = state;
  return result;
}

void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryPoint> trajectory) {
  out << "t,E,mass,dominant_mode\n";
  for (const auto& p : trajectory) {
    out << csv::num(p.t) << ',' << csv::num(p.e) << ',' << csv::num(p.mass) << ','
        << p.dominant_mode << '\n';
  }
}

std::vector<TrajectoryPoint> read_trajectory_csv(std::istream& in) {
  std::vector<TrajectoryPoint> out;
  for (const auto& cells : csv::read(in, "t,E,mass,dominant_mode")) {
    if (cells.size() != 4) throw std::runtime_error("trajectory: expected 4 columns");
    out.push_back({std::stod(cells[0]), std::stod(cells[1]), std::stod(cells[2]),
                   static_cast<std::size_t>(std::stoull(cells[3]))});
  }
  return out;
}

}  // namespace coarsekit
