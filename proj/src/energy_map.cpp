#include "coarsekit/energy_map.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "coarsekit/csv.hpp"
#include "coarsekit/errors.hpp"
#include "coarsekit/quadrature.hpp"

namespace coarsekit {

namespace {

constexpr std::size_t kPanelNodes = 16;

double energy_density(const PeriodicWave& wave, double x) {
  const auto s = wave.sample(x);
  return potential(s.phi, 0, wave.params()) + 0.5 * wave.params().kappa * s.phi_x * s.phi_x;
}

// Quarter-period breakpoints inside [-L, L], each panel split to width <= 1/h
// so transition layers are resolved.
std::vector<double> panel_breaks(const PeriodicWave& wave) {
  const double L = wave.params().half_length;
  const double quarter = 0.25 * wave.period();
  const double max_width = 1.0 / wave.scale();
  std::vector<double> coarse{-L};
  const double first = std::floor(-L / quarter) + 1.0;
  for (double m = first; m * quarter < L; m += 1.0) {
    const double x = m * quarter;
    if (x > coarse.back()) coarse.push_back(x);
  }
  coarse.push_back(L);

  std::vector<double> breaks{coarse.front()};
  for (std::size_t i = 0; i + 1 < coarse.size(); ++i) {
    const double width = coarse[i + 1] - coarse[i];
    const auto pieces = static_cast<std::size_t>(std::ceil(width / max_width));
    for (std::size_t j = 1; j <= pieces; ++j) {
      breaks.push_back(j == pieces ? coarse[i + 1]
                                   : coarse[i] + width * static_cast<double>(j) /
                                                     static_cast<double>(pieces));
    }
  }
  return breaks;
}

EnergyPeriodRow make_row(const PeriodicWave& w) {
  return {w.amplitude(), w.gap(), w.period(), energy_of_amplitude(w)};
}

PeriodicWave midpoint_wave(const EnergyPeriodRow& lo, const EnergyPeriodRow& hi,
                           const ModelParams& params) {
  // Rows far from the binodal bisect in a; near it, geometrically in the gap.
  if (lo.gap > 1e-6 * params.binodal()) {
    return PeriodicWave::from_amplitude(0.5 * (lo.a + hi.a), params);
  }
  return PeriodicWave::from_gap(std::sqrt(lo.gap * hi.gap), params);
}

bool can_split(const EnergyPeriodRow& lo, const EnergyPeriodRow& hi) {
  return (lo.gap - hi.gap) > 1e-13 * lo.gap && (hi.p - lo.p) > 1e-14 * hi.p;
}

void refine(std::vector<EnergyPeriodRow>& out, const EnergyPeriodRow& lo,
            const EnergyPeriodRow& hi, double tol, const ModelParams& params, int depth) {
  if (std::abs(hi.e - lo.e) <= tol || depth > 60 || lo.a == 0.0 || !can_split(lo, hi)) {
    out.push_back(hi);
    return;
  }
  const EnergyPeriodRow mid = make_row(midpoint_wave(lo, hi, params));
  refine(out, lo, mid, tol, params, depth + 1);
  refine(out, mid, hi, tol, params, depth + 1);
}

void check_energy_in_domain(double e, const EnergyPeriodTable& table) {
  if (!std::isfinite(e)) throw DomainError("energy must be finite");
  const double e_min = kink_energy(table.params.half_length, table.params);
  if (e <= e_min) throw DomainError("energy at or below the kink energy has no coarseness");
}

}  // namespace

double energy_of_amplitude(const PeriodicWave& wave) {
  const auto breaks = panel_breaks(wave);
  return integrate_gl_panels([&](double x) { return energy_density(wave, x); },
                             std::span<const double>(breaks), kPanelNodes);
}

double energy_of_amplitude(double a, const ModelParams& params) {
  return energy_of_amplitude(PeriodicWave::from_amplitude(a, params));
}

double energy_of_period(double p, const ModelParams& params) {
  return energy_of_amplitude(wave_from_period(p, params));
}

double amplitude_sensitivity(const PeriodicWave& wave) {
  const ModelParams& pr = wave.params();
  const double a = wave.amplitude();
  const double L = pr.half_length;
  const double h = wave.scale();
  const double m = wave.modulus().k() * wave.modulus().k();
  const double mc = wave.modulus().complement() * wave.modulus().complement();
  const double width = 2.0 * pr.beta / pr.alpha - a * a;
  const auto s = wave.sample(L);
  const double sn = s.phi / a;
  const double cn_dn = s.phi_x / (a * h);
  const double u = h * L;

  // Jacobi epsilon E(u) = int_0^u dn^2 with dn^2 = 1 - m (phi/a)^2.
  const auto breaks = panel_breaks(wave);
  const double eps =
      0.5 * h *
      integrate_gl_panels(
          [&](double x) {
            const double r = wave(x) / a;
            return 1.0 - m * r * r;
          },
          std::span<const double>(breaks), kPanelNodes);

  const double dsn_dm = cn_dn / (2.0 * m * mc) * (mc * u - eps) + sn * (1.0 - sn * sn) / (2.0 * mc);
  const double dm_da = 4.0 * pr.beta / pr.alpha * a / (width * width);
  const double dh_da = -std::sqrt(pr.alpha / (2.0 * pr.kappa)) * a / std::sqrt(width);
  return sn + a * (cn_dn * dh_da * L + dsn_dm * dm_da);
}

double energy_amplitude_derivative(const PeriodicWave& wave) {
  return 2.0 * wave.params().kappa * wave.slope(wave.params().half_length) *
         amplitude_sensitivity(wave);
}

double energy_amplitude_derivative(double a, const ModelParams& params) {
  return energy_amplitude_derivative(PeriodicWave::from_amplitude(a, params));
}

double energy_amplitude_derivative_fixed_modulus(const PeriodicWave& wave) {
  const ModelParams& pr = wave.params();
  const double a = wave.amplitude();
  const double L = pr.half_length;
  const auto s = wave.sample(L);
  const double width = 2.0 * pr.beta / pr.alpha - a * a;
  return (2.0 * pr.kappa / a) * s.phi_x * (s.phi - a * a * L / width * s.phi_x);
}

double plateau_bound(double a, const ModelParams& params) {
  params.validate();
  if (!(a > 0.0 && a < params.binodal())) throw DomainError("plateau bound needs a in (0, binodal)");
  const double delta = std::sqrt(2.0 * params.beta / (params.alpha * a * a) - 1.0);
  return a * a * a * std::sqrt(params.alpha * params.kappa) * std::pow(1.0 + delta, 1.5) *
         delta * delta * delta * (delta - 1.0) / (2.0 * params.half_length);
}

double EnergyPeriodTable::e_max() const {
  return 2.0 * params.half_length * potential(0.0, 0, params);
}

double EnergyPeriodTable::p_min() const {
  return closed_form_constants(params).p_min;
}

EnergyPeriodTable build_energy_period_table(const ModelParams& params,
                                            const EnergyTableOptions& options) {
  params.validate();
  if (options.uniform_rows < 2) throw DomainError("energy table needs at least 2 rows");
  const DerivedConstants c = closed_form_constants(params);
  const double b = c.binodal;

  std::vector<EnergyPeriodRow> coarse;
  coarse.push_back({0.0, b, c.p_min, c.e_max});
  const double a_lo = 1e-6 * b;
  const double a_hi = b * (1.0 - 1e-9);
  for (std::size_t i = 0; i < options.uniform_rows; ++i) {
    const double a = a_lo + (a_hi - a_lo) * static_cast<double>(i) /
                                static_cast<double>(options.uniform_rows - 1);
    coarse.push_back(make_row(PeriodicWave::from_amplitude(a, params)));
  }
  // Tail: periods up to 2L plus twenty interface widths, where the wave
  // energy has settled onto the single-transition value.
  const double p_stop = 2.0 * params.half_length + 20.0 * std::sqrt(2.0 * params.kappa / params.beta);
  const double factor = std::pow(10.0, -0.25);
  for (double g = coarse.back().gap * factor; g > 1e-300 * b && coarse.back().p < p_stop;
       g *= factor) {
    coarse.push_back(make_row(PeriodicWave::from_gap(g, params)));
  }

  EnergyPeriodTable table{params, {}};
  const double tol = c.e_max / options.gap_divisor;
  table.rows.push_back(coarse.front());
  for (std::size_t i = 0; i + 1 < coarse.size(); ++i) {
    refine(table.rows, coarse[i], coarse[i + 1], tol, params, 0);
  }
  return table;
}

void write_energy_table_csv(std::ostream& out, const EnergyPeriodTable& table) {
  out << "a,p,E\n";
  for (const auto& r : table.rows) {
    out << csv::num(r.a) << ',' << csv::num(r.p) << ',' << csv::num(r.e) << '\n';
  }
}

EnergyPeriodTable read_energy_table_csv(std::istream& in, const ModelParams& params) {
  params.validate();
  EnergyPeriodTable table{params, {}};
  const double b = params.binodal();
  for (const auto& cells : csv::read(in, "a,p,E")) {
    if (cells.size() != 3) throw std::runtime_error("energy table: expected 3 columns");
    EnergyPeriodRow r{std::stod(cells[0]), 0.0, std::stod(cells[1]), std::stod(cells[2])};
    r.gap = b - r.a;
    if (r.a > 0.0 && r.gap < 1e-6 * b) r.gap = wave_from_period(r.p, params).gap();
    table.rows.push_back(r);
  }
  if (table.rows.size() < 2) throw std::runtime_error("energy table: fewer than 2 rows");
  return table;
}

CoarsenessValue period_from_energy(double e, const EnergyPeriodTable& table) {
  const auto& rows = table.rows;
  if (rows.empty()) throw DomainError("empty energy table");
  if (e > table.e_max()) return {table.p_min(), e, true};
  check_energy_in_domain(e, table);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].e > e) continue;
    if (i == 0) return {rows[0].p, e, false};
    const auto& lo = rows[i - 1];
    const auto& hi = rows[i];
    const double w = (lo.e - e) / (lo.e - hi.e);
    return {lo.p + w * (hi.p - lo.p), e, false};
  }
  throw DomainError("energy below the tabulated range");
}

CoarsenessValue period_from_energy_refined(double e, const EnergyPeriodTable& table) {
  const auto& rows = table.rows;
  if (rows.empty()) throw DomainError("empty energy table");
  if (e > table.e_max()) return {table.p_min(), e, true};
  check_energy_in_domain(e, table);
  const auto it = std::find_if(rows.begin(), rows.end(), [e](const auto& r) { return r.e <= e; });
  if (it == rows.end()) throw DomainError("energy below the tabulated range");
  if (it == rows.begin()) return {it->p, e, false};

  EnergyPeriodRow lo = *(it - 1);
  EnergyPeriodRow hi = *it;
  for (int i = 0; i < 60 && can_split(lo, hi) && lo.a > 0.0; ++i) {
    const EnergyPeriodRow mid = make_row(midpoint_wave(lo, hi, table.params));
    (mid.e <= e ? hi : lo) = mid;
  }
  if (lo.a == 0.0 || lo.e == hi.e) return {hi.p, e, false};
  const double w = (lo.e - e) / (lo.e - hi.e);
  return {lo.p + w * (hi.p - lo.p), e, false};
}

double energy_envelope(double p, const EnergyPeriodTable& table) {
  const auto& rows = table.rows;
  if (rows.empty()) throw DomainError("empty energy table");
  double running = rows.front().e;
  if (p <= rows.front().p) return running;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    running = std::min(running, rows[i].e);
    if (p < rows[i + 1].p) {
      const double w = (p - rows[i].p) / (rows[i + 1].p - rows[i].p);
      return std::min(running, rows[i].e + w * (rows[i + 1].e - rows[i].e));
    }
  }
  return std::min(running, rows.back().e);
}

double kohn_otto_length(std::span<const double> samples, double half_length) {
  if (samples.empty()) throw DomainError("Kohn-Otto length needs samples");
  if (!(half_length > 0.0)) throw DomainError("Kohn-Otto length needs L > 0");
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double scale = 0.0;
  for (double v : samples) scale = std::max(scale, std::abs(v));
  if (std::abs(mean) > 1e-10 * std::max(1.0, scale)) {
    throw DomainError("Kohn-Otto length requires mean-zero samples");
  }

  const double dx = 2.0 * half_length / n;
  std::vector<double> antiderivative(samples.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    antiderivative[j] = acc;
    acc += dx * (samples[j] - mean);
  }
  std::vector<double> sorted = antiderivative;
  std::sort(sorted.begin(), sorted.end());
  // Any point of the median interval minimizes sum |Phi - c|; take the lower end.
  const double c = sorted[(sorted.size() - 1) / 2];
  double total = 0.0;
  for (double v : antiderivative) total += std::abs(v - c);
  return dx * total / (2.0 * half_length);
}

}  // namespace coarsekit
