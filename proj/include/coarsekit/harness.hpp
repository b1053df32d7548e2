#pragma once

// Ensembles of simulations, their mean energy, coarseness curves and the
// comparison against the analytic models.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "coarsekit/config.hpp"
#include "coarsekit/energy_map.hpp"
#include "coarsekit/models.hpp"
#include "coarsekit/solver.hpp"
#include "coarsekit/spectral.hpp"

namespace coarsekit {

struct MeanPoint {
  double t;
  double e;
};

struct EnsembleResult {
  std::vector<std::uint64_t> seeds;
  std::vector<std::vector<TrajectoryPoint>> trajectories;
  std::vector<MeanPoint> mean;
};

/// Trial i uses seed seed_base + i; trials run on up to config.jobs threads.
EnsembleResult run_ensemble(const RunConfig& config);

/// Pointwise mean; all trajectories must share one time grid.
std::vector<MeanPoint> ensemble_mean(std::span<const std::vector<TrajectoryPoint>> trajectories);

struct CoarsenessPoint {
  double t;
  double e;
  double p;
  bool flagged;
};

/// Pseudoinverse applied pointwise; energies above e_max map to p_min with a
/// flag, energies below the table map to its last period with a flag.
std::vector<CoarsenessPoint> coarseness_curve(std::span<const MeanPoint> energies,
                                              const EnergyPeriodTable& table);

struct CompareRow {
  double t;
  double e_sim;
  double e_langer;
  double e_eigen;
  double e_eigen_half;
  double p_sim;
  double p_langer;
  double p_eigen;
};

struct Comparison {
  double t_s;  // first time the mean energy reaches e_s
  double p_s;
  std::vector<CompareRow> rows;
  ModelCurve langer;
  ModelCurve eigen;
  ModelCurve eigen_half;
};

/// Time at which the curve first reaches `level`, linearly interpolated;
/// NaN if it never does.
double first_crossing_time(std::span<const MeanPoint> curve, double level);

/// Models start at (t_s, p_s); model columns are NaN before t_s.
Comparison compare(std::span<const MeanPoint> mean, const EnergyPeriodTable& energy_table,
                   const EigenTable& eigen_table, const ModelParams& params);

void write_mean_csv(std::ostream& out, std::span<const MeanPoint> mean);
std::vector<MeanPoint> read_mean_csv(std::istream& in);
void write_coarseness_csv(std::ostream& out, std::span<const CoarsenessPoint> curve);
void write_compare_csv(std::ostream& out, std::span<const CompareRow> rows);

/// Command-line entry point; returns the process exit status.
int cli_dispatch(int argc, char** argv);

}  // namespace coarsekit
