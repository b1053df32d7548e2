#pragma once

// Leading eigenvalue of the linearization about a periodic wave, through the
// monodromy matrix of the fourth-order eigenvalue ODE written as a 4x4 system.

#include <array>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "coarsekit/core_model.hpp"
#include "coarsekit/stationary.hpp"

namespace coarsekit {

using Matrix4 = std::array<std::array<double, 4>, 4>;
using Multipliers = std::array<std::complex<double>, 4>;

/// b = F''(phi(x)) and its first two x-derivatives, from the analytic wave.
struct CoefficientB {
  double b;
  double db;
  double d2b;
};
CoefficientB coefficient_b(const PeriodicWave& wave, double x);

struct Monodromy {
  double lambda;
  Matrix4 m;
  /// Sum of the principal 2x2 minors of m, integrated through the second
  /// compound system so it stays accurate when the entries of m are huge.
  double minor_sum;

  double trace() const { return m[0][0] + m[1][1] + m[2][2] + m[3][3]; }
  double determinant() const;
};

/// The first-order eigenvalue system over one period of a wave, with the
/// coefficients sampled once so repeated monodromy evaluations are cheap.
class FloquetProblem {
 public:
  static constexpr std::size_t default_steps = 4000;

  explicit FloquetProblem(const PeriodicWave& wave, std::size_t steps = default_steps);

  /// Fundamental matrix at x = p (classical RK4, fixed step p / steps).
  Monodromy monodromy(double lambda) const;
  /// Fundamental matrix at x = p/2. b has period p/2, so this map squares
  /// to the monodromy while its entries stay near the square root in size.
  Monodromy half_monodromy(double lambda) const;

  const PeriodicWave& wave() const { return wave_; }
  std::size_t steps() const { return steps_; }

 private:
  Monodromy integrate(double lambda, std::size_t steps) const;

  PeriodicWave wave_;
  std::size_t steps_;
  double step_;
  std::vector<CoefficientB> coeffs_;  // at x = j * step / 2
};

Monodromy monodromy(const PeriodicWave& wave, double lambda,
                    std::size_t steps = FloquetProblem::default_steps);

/// Multipliers from the reciprocal characteristic polynomial
/// mu^4 - T mu^3 + S mu^2 - T mu + 1 via nu = mu + 1/mu.
Multipliers floquet_multipliers(const Monodromy& m);
/// Multipliers from a general eigen-solver applied to m directly.
Multipliers eigenvalues_direct(const Matrix4& m);

/// D(lambda, xi) = det(M - exp(i xi p) I).
std::complex<double> evans(const PeriodicWave& wave, double lambda, double xi);
std::complex<double> evans(const Monodromy& m, double period, double xi);

/// True if some multiplier satisfies ||mu| - 1| <= tol.
bool has_unit_multiplier(const Monodromy& m, double tol = 1e-6);

struct LeadingEigenvalue {
  double lambda;
  bool resolved;  // false: no unit multiplier down to lambda = 1e-10
};

/// Largest real lambda with a unit-modulus multiplier, scanning down from
/// `hint` in steps of hint/200, then bisecting to relative width 1e-8.
/// Multipliers are taken from the half-period map (squared moduli).
LeadingEigenvalue leading_eigenvalue(const FloquetProblem& problem, double hint);
LeadingEigenvalue leading_eigenvalue(const PeriodicWave& wave, double hint);

struct EigenRow {
  double a;
  double gap;
  double p;
  double lambda;
};

struct EigenTable {
  ModelParams params;  // kappa here is the kappa the rows are expressed at
  double kappa0;       // reference kappa of the continuation
  std::vector<EigenRow> rows;
  /// Index of the first row where the continuation lost the eigenvalue.
  std::optional<std::size_t> break_row;
  /// Soft check: lambda strictly decreasing down the rows.
  bool monotone = true;
};

/// Amplitudes 1e-3..0.95 of the binodal, then gaps geometric down to
/// 1e-8 of the binodal.
std::vector<double> default_amplitude_grid(const ModelParams& params);

/// Continuation along an ascending amplitude grid; each row starts its
/// search at the previous leading eigenvalue.
EigenTable build_eigen_table(const ModelParams& params, std::span<const double> amplitudes,
                             std::size_t steps = FloquetProblem::default_steps);

/// lambda(a; kappa) = (kappa0 / kappa) lambda(a; kappa0), periods recomputed.
EigenTable rescale_eigen_table(const EigenTable& table, double kappa);

void write_eigen_table_csv(std::ostream& out, const EigenTable& table);
/// Rows are taken to be expressed at params.kappa.
EigenTable read_eigen_table_csv(std::istream& in, const ModelParams& params);

}  // namespace coarsekit
