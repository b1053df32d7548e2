#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "coarsekit/csv.hpp"
#include "coarsekit/harness.hpp"

namespace coarsekit {

namespace {

namespace fs = std::filesystem;

// Flags that mirror config-file keys; applied on top of the file.
struct Overrides {
  std::map<std::string, std::string> values;
  std::string config_path;

  void add_params(CLI::App* app) {
    app->add_option("--config", config_path, "key = value config file (default: $COARSEKIT_CONFIG)");
    for (const char* key : {"alpha", "beta", "kappa", "half_length"}) add(app, key);
  }
  void add_solver(CLI::App* app) {
    for (const char* key : {"n_grid", "dt", "stabilization", "t_end", "record_stride"}) add(app, key);
  }
  void add(CLI::App* app, const std::string& key) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    app->add_option_function<std::string>(
        flag, [this, key](const std::string& v) { values[key] = v; }, "override config key " + key);
  }

  RunConfig resolve() const {
    RunConfig cfg;
    std::string path = config_path;
    if (path.empty()) {
      if (const char* env = std::getenv("COARSEKIT_CONFIG")) path = env;
    }
    if (!path.empty()) cfg = load_config(path, cfg);
    for (const auto& [k, v] : values) cfg.set(k, v);
    return cfg;
  }
};

// Writes to `path`, or stdout when the path is empty or "-".
template <typename F>
void emit(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write(out);
}

std::ifstream open_input(const std::string& path, const char* what) {
  if (path.empty()) throw std::runtime_error(std::string("missing ") + what + " input");
  std::ifstream in(path);
  if (!in) throw std::runtime_error(std::string("cannot read ") + what + " " + path);
  return in;
}

// "ps", "2ps", "2.5ps", "0.3" -> periods.
std::vector<double> parse_periods(const std::string& text, double p_s) {
  std::vector<double> out;
  for (std::string token : csv::split(text)) {
    double scale = 1.0;
    if (token.size() >= 2 && token.substr(token.size() - 2) == "ps") {
      token.resize(token.size() - 2);
      scale = p_s;
      if (token.empty()) token = "1";
    }
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument("bad period '" + token + "'");
    out.push_back(v * scale);
  }
  return out;
}

std::vector<double> uniform_times(double t0, double t1, std::size_t n) {
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return out;
}

}  // namespace

int cli_dispatch(int argc, char** argv) {
  CLI::App app{"Coarseness measures for 1D Cahn-Hilliard dynamics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(COARSEKIT_VERSION));
  Overrides ov;
  std::string output;

  auto* tab_e = app.add_subcommand("tabulate-energy", "energy-period table (a,p,E)");
  std::size_t rows = EnergyTableOptions{}.uniform_rows;
  ov.add_params(tab_e);
  tab_e->add_option("--rows", rows, "uniform rows before refinement")->check(CLI::Range(2, 1 << 24));
  tab_e->add_option("-o,--output", output, "output CSV (default stdout)");

  auto* tab_l = app.add_subcommand("tabulate-eigen", "leading-eigenvalue table (a,p,lambda_max,kappa0)");
  std::optional<double> kappa0;
  std::optional<double> rescale_to;
  ov.add_params(tab_l);
  tab_l->add_option("--kappa0", kappa0, "reference kappa of the continuation");
  tab_l->add_option("--rescale-to", rescale_to, "rescale the rows to this kappa");
  tab_l->add_option("-o,--output", output, "output CSV (default stdout)");

  auto* sim = app.add_subcommand("simulate", "single trial trajectory (t,E,mass,dominant_mode)");
  std::uint64_t seed = 0;
  ov.add_params(sim);
  ov.add_solver(sim);
  sim->add_option("--seed", seed, "RNG seed");
  sim->add_option("-o,--output", output, "trajectory CSV (default stdout)");

  auto* ens = app.add_subcommand("ensemble", "trial ensemble, mean curve and optional coarseness");
  std::string out_dir = ".";
  std::string energy_path;
  std::string eigen_path;
  ov.add_params(ens);
  ov.add_solver(ens);
  for (const char* key : {"trials", "seed_base", "jobs"}) ov.add(ens, key);
  ens->add_option("--out-dir", out_dir, "directory for trial_<seed>.csv and mean.csv");
  ens->add_option("--energy-table", energy_path, "energy table; adds coarseness.csv");

  auto* mod = app.add_subcommand("models", "Langer and eigenvalue-model curves (t,p,E,model)");
  std::optional<double> t0;
  std::optional<double> p0;
  double t1 = 100.0;
  std::size_t samples = 1001;
  ov.add_params(mod);
  mod->add_option("--energy-table", energy_path, "energy table CSV")->required();
  mod->add_option("--eigen-table", eigen_path, "eigenvalue table CSV")->required();
  mod->add_option("--t0", t0, "initial time (default 0)");
  mod->add_option("--p0", p0, "initial period (default p_s)");
  mod->add_option("--t1", t1, "final time");
  mod->add_option("--samples", samples, "output samples")->check(CLI::Range(2, 1 << 24));
  mod->add_option("-o,--output", output, "output CSV (default stdout)");

  auto* cmp = app.add_subcommand("compare", "ensemble mean against the models on one grid");
  std::string mean_path;
  ov.add_params(cmp);
  cmp->add_option("--mean", mean_path, "mean CSV (t,E)")->required();
  cmp->add_option("--energy-table", energy_path, "energy table CSV")->required();
  cmp->add_option("--eigen-table", eigen_path, "eigenvalue table CSV")->required();
  cmp->add_option("-o,--output", output, "output CSV (default stdout)");

  auto* wav = app.add_subcommand("waves", "stationary profiles (period,a,x,phi)");
  std::string periods = "ps,2ps,5ps";
  std::size_t points = 1024;
  ov.add_params(wav);
  wav->add_option("--periods", periods, "comma list; 'ps' suffix scales by the spinodal period");
  wav->add_option("--points", points, "samples over [-L, L]")->check(CLI::Range(2, 1 << 24));
  wav->add_option("-o,--output", output, "output CSV (default stdout)");

  auto* epd = app.add_subcommand("energy-period-plot-data", "E(p) with its envelope (a,p,E,envelope)");
  ov.add_params(epd);
  epd->add_option("--rows", rows, "uniform rows before refinement")->check(CLI::Range(2, 1 << 24));
  epd->add_option("-o,--output", output, "output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const RunConfig cfg = ov.resolve();
    const ModelParams& params = cfg.params;
    params.validate();

    if (*tab_e || *epd) {
      const auto table = build_energy_period_table(params, {.uniform_rows = rows});
      emit(output, [&](std::ostream& out) {
        if (*tab_e) {
          write_energy_table_csv(out, table);
          return;
        }
        out << "a,p,E,envelope\n";
        for (const auto& r : table.rows) {
          out << csv::num(r.a) << ',' << csv::num(r.p) << ',' << csv::num(r.e) << ','
              << csv::num(energy_envelope(r.p, table)) << '\n';
        }
      });
    } else if (*tab_l) {
      ModelParams ref = params;
      if (kappa0) ref.kappa = *kappa0;
      const auto grid = default_amplitude_grid(ref);
      EigenTable table = build_eigen_table(ref, grid);
      if (table.break_row) {
        std::cerr << "continuation stopped at grid row " << *table.break_row << " of "
                  << grid.size() << '\n';
      }
      if (rescale_to) table = rescale_eigen_table(table, *rescale_to);
      emit(output, [&](std::ostream& out) { write_eigen_table_csv(out, table); });
    } else if (*sim) {
      cfg.validate();
      SolverConfig solver = cfg.solver;
      solver.seed = seed;
      const auto result = run_simulation(params, solver, cfg.t_end);
      emit(output, [&](std::ostream& out) { write_trajectory_csv(out, result.trajectory); });
      if (!output.empty() && output != "-") {
        std::ofstream meta(output + ".meta");
        write_run_metadata(meta, cfg, seed);
      }
    } else if (*ens) {
      cfg.validate();
      const auto result = run_ensemble(cfg);
      fs::create_directories(out_dir);
      for (std::size_t i = 0; i < result.seeds.size(); ++i) {
        const std::string csv =
            (fs::path(out_dir) / ("trial_" + std::to_string(result.seeds[i]) + ".csv")).string();
        emit(csv, [&](std::ostream& out) { write_trajectory_csv(out, result.trajectories[i]); });
        std::ofstream meta(csv + ".meta");
        write_run_metadata(meta, cfg, result.seeds[i]);
      }
      emit((fs::path(out_dir) / "mean.csv").string(),
           [&](std::ostream& out) { write_mean_csv(out, result.mean); });
      if (!energy_path.empty()) {
        auto in = open_input(energy_path, "energy table");
        const auto table = read_energy_table_csv(in, params);
        const auto curve = coarseness_curve(result.mean, table);
        emit((fs::path(out_dir) / "coarseness.csv").string(),
             [&](std::ostream& out) { write_coarseness_csv(out, curve); });
      }
    } else if (*mod) {
      auto ein = open_input(energy_path, "energy table");
      auto lin = open_input(eigen_path, "eigen table");
      const auto etable = read_energy_table_csv(ein, params);
      const auto ltable = read_eigen_table_csv(lin, params);
      const double start = t0.value_or(0.0);
      const double period = p0.value_or(derived_constants(params).p_s);
      if (!(t1 > start)) throw std::invalid_argument("--t1 must exceed --t0");
      const auto times = uniform_times(start, t1, samples);
      const GrowthRate rate(ltable);
      const std::vector<ModelCurve> curves{
          model_energy_curve(langer_curve(period, start, times, params), etable),
          model_energy_curve(eigen_model_integrate(period, start, times, rate, 1.0), etable),
          model_energy_curve(eigen_model_integrate(period, start, times, rate, 0.5), etable)};
      emit(output, [&](std::ostream& out) { write_curves_csv(out, curves); });
    } else if (*cmp) {
      auto min = open_input(mean_path, "mean curve");
      auto ein = open_input(energy_path, "energy table");
      auto lin = open_input(eigen_path, "eigen table");
      const auto mean = read_mean_csv(min);
      const auto etable = read_energy_table_csv(ein, params);
      const auto ltable = read_eigen_table_csv(lin, params);
      const auto result = compare(mean, etable, ltable, params);
      emit(output, [&](std::ostream& out) { write_compare_csv(out, result.rows); });
    } else if (*wav) {
      const double p_s = closed_form_constants(params).p_s;
      const auto list = parse_periods(periods, p_s);
      emit(output, [&](std::ostream& out) {
        out << "period,a,x,phi\n";
        for (double p : list) {
          const PeriodicWave w = wave_from_period(p, params);
          for (std::size_t j = 0; j < points; ++j) {
            const double x = -params.half_length + 2.0 * params.half_length *
                                                       static_cast<double>(j) /
                                                       static_cast<double>(points - 1);
            out << csv::num(w.period()) << ',' << csv::num(w.amplitude()) << ',' << csv::num(x)
                << ',' << csv::num(w(x)) << '\n';
          }
        }
      });
    }
  } catch (const std::exception& e) {
    std::cerr << "coarsekit: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace coarsekit
