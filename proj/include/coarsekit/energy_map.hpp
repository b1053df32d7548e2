#pragma once

// Energies of the periodic waves as functions of amplitude and period, and
// the pseudoinverse that turns an energy into a coarseness length.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "coarsekit/core_model.hpp"
#include "coarsekit/stationary.hpp"

namespace coarsekit {

/// Energy of the wave restricted to [-L, L] (panel Gauss-Legendre).
double energy_of_amplitude(const PeriodicWave& wave);
double energy_of_amplitude(double a, const ModelParams& params);

/// Energy of the wave with period p.
double energy_of_period(double p, const ModelParams& params);

/// d phi(L; a) / da, including the dependence of the modulus on a.
double amplitude_sensitivity(const PeriodicWave& wave);

/// dE/da = 2 kappa phi_x(L) phi_a(L) from the boundary terms at x = L.
double energy_amplitude_derivative(const PeriodicWave& wave);
double energy_amplitude_derivative(double a, const ModelParams& params);

/// The boundary-term formula with the modulus held fixed, i.e. with
/// phi_a = phi / a - a x phi_x / (2 beta / alpha - a^2). Exact where
/// phi_x(L) = 0; elsewhere it drops the dk/da contribution.
double energy_amplitude_derivative_fixed_modulus(const PeriodicWave& wave);

/// Upper bound on dE/dp at any period where the slope is positive.
double plateau_bound(double a, const ModelParams& params);

struct EnergyPeriodRow {
  double a;
  double gap;  // binodal - a, kept separately for waves near the binodal
  double p;
  double e;
};

struct EnergyPeriodTable {
  ModelParams params;
  std::vector<EnergyPeriodRow> rows;  // ascending in a, hence in p

  double e_max() const;
  double p_min() const;
};

struct EnergyTableOptions {
  std::size_t uniform_rows = 2000;
  /// Refine until adjacent energies differ by at most e_max / gap_divisor.
  double gap_divisor = 5000.0;
};

/// Rows uniform in a over [1e-6, binodal(1 - 1e-9)], a tail geometric in the
/// binodal gap reaching periods beyond 2L, then bisection refinement.
/// The first row is the a -> 0 limit (p_min, e_max).
EnergyPeriodTable build_energy_period_table(const ModelParams& params,
                                            const EnergyTableOptions& options = {});

void write_energy_table_csv(std::ostream& out, const EnergyPeriodTable& table);
EnergyPeriodTable read_energy_table_csv(std::istream& in, const ModelParams& params);

struct CoarsenessValue {
  double period;
  double energy;
  bool clamped = false;  // energy was above e_max; period pinned to p_min
};

/// inf{p : E(p) <= e} over the tabulated, linearly interpolated map.
CoarsenessValue period_from_energy(double e, const EnergyPeriodTable& table);

/// Same infimum, but the bracketing table interval is refined by bisection
/// on freshly evaluated wave energies.
CoarsenessValue period_from_energy_refined(double e, const EnergyPeriodTable& table);

/// Running minimum of the interpolated E(p): the non-increasing envelope
/// whose generalized inverse is period_from_energy.
double energy_envelope(double p, const EnergyPeriodTable& table);

/// Kohn-Otto length of mean-zero samples on a uniform periodic grid over
/// [-L, L): (1/2L) min_c sum |Phi_j - c| dx with Phi the left-rectangle
/// antiderivative.
double kohn_otto_length(std::span<const double> samples, double half_length);

}  // namespace coarsekit
