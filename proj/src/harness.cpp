#include "coarsekit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "coarsekit/csv.hpp"
#include "coarsekit/errors.hpp"

namespace coarsekit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

EnsembleResult run_ensemble(const RunConfig& config) {
  config.validate();
  EnsembleResult result;
  for (std::size_t i = 0; i < config.trials; ++i) result.seeds.push_back(config.seed_base + i);
  result.trajectories.resize(config.trials);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < config.trials; i = next++) {
      try {
        SolverConfig solver = config.solver;
        solver.seed = result.seeds[i];
        result.trajectories[i] = run_simulation(config.params, solver, config.t_end).trajectory;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min(config.jobs, config.trials);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  result.mean = ensemble_mean(result.trajectories);
  return result;
}

std::vector<MeanPoint> ensemble_mean(std::span<const std::vector<TrajectoryPoint>> trajectories) {
  if (trajectories.empty()) throw DomainError("ensemble mean needs at least one trajectory");
  const auto& grid = trajectories.front();
  for (const auto& tr : trajectories) {
    if (tr.size() != grid.size()) throw DomainError("trajectories have different lengths");
    for (std::size_t i = 0; i < tr.size(); ++i) {
      if (std::abs(tr[i].t - grid[i].t) > 1e-12 * std::max(1.0, std::abs(grid[i].t))) {
        throw DomainError("trajectories do not share a time grid");
      }
    }
  }
  std::vector<MeanPoint> mean;
  mean.reserve(grid.size());
  const double count = static_cast<double>(trajectories.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double sum = 0.0;
    for (const auto& tr : trajectories) sum += tr[i].e;
    mean.push_back({grid[i].t, sum / count});
  }
  return mean;
}

std::vector<CoarsenessPoint> coarseness_curve(std::span<const MeanPoint> energies,
                                              const EnergyPeriodTable& table) {
  std::vector<CoarsenessPoint> out;
  out.reserve(energies.size());
  for (const auto& m : energies) {
    try {
      const CoarsenessValue v = period_from_energy(m.e, table);
      out.push_back({m.t, m.e, v.period, v.clamped});
    } catch (const DomainError&) {
      out.push_back({m.t, m.e, table.rows.back().p, true});
    }
  }
  return out;
}

double first_crossing_time(std::span<const MeanPoint> curve, double level) {
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (curve[i].e > level) continue;
    if (i == 0) return curve[0].t;
    const auto& a = curve[i - 1];
    const auto& b = curve[i];
    return a.t + (a.e - level) / (a.e - b.e) * (b.t - a.t);
  }
  return kNaN;
}

Comparison compare(std::span<const MeanPoint> mean, const EnergyPeriodTable& energy_table,
                   const EigenTable& eigen_table, const ModelParams& params) {
  const DerivedConstants c = derived_constants(params);
  const double t_s = first_crossing_time(mean, c.e_s);
  if (std::isnan(t_s)) throw DomainError("mean energy never reaches the spinodal energy");

  std::vector<double> times{t_s};
  std::size_t first = mean.size();
  for (std::size_t i = 0; i < mean.size(); ++i) {
    if (mean[i].t < t_s) continue;
    if (first == mean.size()) first = i;
    if (mean[i].t > t_s) times.push_back(mean[i].t);
  }
  // Sample index of mean[i] for i >= first.
  const std::size_t offset = (first < mean.size() && mean[first].t == t_s) ? 0 : 1;

  const EigenTable table = std::abs(eigen_table.params.kappa - params.kappa) <= 1e-15 * params.kappa
                               ? eigen_table
                               : rescale_eigen_table(eigen_table, params.kappa);
  const GrowthRate rate(table);

  Comparison out{t_s, c.p_s, {},
                 model_energy_curve(langer_curve(c.p_s, t_s, times, params), energy_table),
                 model_energy_curve(eigen_model_integrate(c.p_s, t_s, times, rate, 1.0),
                                    energy_table),
                 model_energy_curve(eigen_model_integrate(c.p_s, t_s, times, rate, 0.5),
                                    energy_table)};

  const auto sim = coarseness_curve(mean, energy_table);
  for (std::size_t i = 0; i < mean.size(); ++i) {
    CompareRow row{mean[i].t, mean[i].e, kNaN, kNaN, kNaN, sim[i].p, kNaN, kNaN};
    if (i >= first) {
      const std::size_t k = i - first + offset;
      row.e_langer = out.langer.samples[k].e;
      row.e_eigen = out.eigen.samples[k].e;
      row.e_eigen_half = out.eigen_half.samples[k].e;
      row.p_langer = out.langer.samples[k].p;
      row.p_eigen = out.eigen.samples[k].p;
    }
    out.rows.push_back(row);
  }
  return out;
}

void write_mean_csv(std::ostream& out, std::span<const MeanPoint> mean) {
  out << "t,E\n";
  for (const auto& m : mean) out << csv::num(m.t) << ',' << csv::num(m.e) << '\n';
}

std::vector<MeanPoint> read_mean_csv(std::istream& in) {
  std::vector<MeanPoint> out;
  for (const auto& cells : csv::read(in, "t,E")) {
    if (cells.size() != 2) throw std::runtime_error("mean curve: expected 2 columns");
    out.push_back({std::stod(cells[0]), std::stod(cells[1])});
  }
  return out;
}

void write_coarseness_csv(std::ostream& out, std::span<const CoarsenessPoint> curve) {
  out << "t,E,p,flagged\n";
  for (const auto& c : curve) {
    out << csv::num(c.t) << ',' << csv::num(c.e) << ',' << csv::num(c.p) << ','
        << (c.flagged ? 1 : 0) << '\n';
  }
}

void write_compare_csv(std::ostream& out, std::span<const CompareRow> rows) {
  out << "t,E_sim,E_langer,E_eigen,E_eigen_half,p_sim,p_langer,p_eigen\n";
  for (const auto& r : rows) {
    out << csv::num(r.t) << ',' << csv::num(r.e_sim) << ',' << csv::num(r.e_langer) << ','
        << csv::num(r.e_eigen) << ',' << csv::num(r.e_eigen_half) << ',' << csv::num(r.p_sim)
        << ',' << csv::num(r.p_langer) << ',' << csv::num(r.p_eigen) << '\n';
  }
}

}  // namespace coarsekit
