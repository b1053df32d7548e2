#include "coarsekit/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "coarsekit/csv.hpp"
#include "coarsekit/errors.hpp"

namespace coarsekit {

namespace {

using Matrix6 = std::array<std::array<double, 6>, 6>;

// Index pairs (i < j) in lexicographic order, the basis of the second compound.
constexpr std::array<std::array<int, 2>, 6> kPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

Matrix4 system_matrix(const CoefficientB& c, double lambda, double kappa) {
  Matrix4 a{};
  a[0][1] = 1.0;
  a[1][2] = 1.0;
  a[2][3] = 1.0;
  a[3][0] = (c.d2b - lambda) / kappa;
  a[3][1] = 2.0 * c.db / kappa;
  a[3][2] = c.b / kappa;
  return a;
}

// Additive second compound: generator of the flow on 2x2 minors.
Matrix6 second_compound(const Matrix4& a) {
  Matrix6 out{};
  for (int r = 0; r < 6; ++r) {
    const int i = kPairs[r][0];
    const int j = kPairs[r][1];
    for (int s = 0; s < 6; ++s) {
      const int k = kPairs[s][0];
      const int l = kPairs[s][1];
      double v = 0.0;
      if (r == s) {
        v = a[i][i] + a[j][j];
      } else if (i == k) {
        v = a[j][l];
      } else if (j == l) {
        v = a[i][k];
      } else if (i == l) {
        v = -a[j][k];
      } else if (j == k) {
        v = -a[i][l];
      }
      out[r][s] = v;
    }
  }
  return out;
}

template <std::size_t N>
using Square = std::array<std::array<double, N>, N>;

template <std::size_t N>
Square<N> multiply(const Square<N>& a, const Square<N>& b) {
  Square<N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t k = 0; k < N; ++k) {
      const double aik = a[i][k];
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < N; ++j) out[i][j] += aik * b[k][j];
    }
  }
  return out;
}

template <std::size_t N>
Square<N> axpy(const Square<N>& y, double h, const Square<N>& x) {
  Square<N> out = y;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out[i][j] += h * x[i][j];
  return out;
}

template <std::size_t N>
Square<N> identity() {
  Square<N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i][i] = 1.0;
  return out;
}

template <std::size_t N>
void rk4_update(Square<N>& y, double h, const Square<N>& k1, const Square<N>& k2,
                const Square<N>& k3, const Square<N>& k4) {
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      y[i][j] += h / 6.0 * (k1[i][j] + 2.0 * k2[i][j] + 2.0 * k3[i][j] + k4[i][j]);
}

std::complex<double> larger_root(std::complex<double> nu) {
  const std::complex<double> r = std::sqrt(nu * nu - 4.0);
  const std::complex<double> m1 = 0.5 * (nu + r);
  const std::complex<double> m2 = 0.5 * (nu - r);
  return std::abs(m1) >= std::abs(m2) ? m1 : m2;
}

}  // namespace

CoefficientB coefficient_b(const PeriodicWave& wave, double x) {
  const ModelParams& p = wave.params();
  const auto s = wave.sample(x);
  const double phi_xx = potential(s.phi, 1, p) / p.kappa;
  return {3.0 * p.alpha * s.phi * s.phi - p.beta, 6.0 * p.alpha * s.phi * s.phi_x,
          6.0 * p.alpha * (s.phi_x * s.phi_x + s.phi * phi_xx)};
}

double Monodromy::determinant() const {
  Eigen::Matrix4d a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = m[i][j];
  return a.determinant();
}

FloquetProblem::FloquetProblem(const PeriodicWave& wave, std::size_t steps)
    : wave_(wave), steps_(steps), step_(0.0) {
  if (steps < 2 || steps % 2 != 0) throw DomainError("monodromy needs an even, positive step count");
  step_ = wave.period() / static_cast<double>(steps);
  coeffs_.reserve(2 * steps + 1);
  for (std::size_t j = 0; j <= 2 * steps; ++j) {
    coeffs_.push_back(coefficient_b(wave, 0.5 * step_ * static_cast<double>(j)));
  }
}

Monodromy FloquetProblem::monodromy(double lambda) const { return integrate(lambda, steps_); }

Monodromy FloquetProblem::half_monodromy(double lambda) const {
  return integrate(lambda, steps_ / 2);
}

Monodromy FloquetProblem::integrate(double lambda, std::size_t steps) const {
  const double kappa = wave_.params().kappa;
  const double h = step_;
  Matrix4 y = identity<4>();
  Matrix6 c = identity<6>();
  for (std::size_t n = 0; n < steps; ++n) {
    const Matrix4 a0 = system_matrix(coeffs_[2 * n], lambda, kappa);
    const Matrix4 ah = system_matrix(coeffs_[2 * n + 1], lambda, kappa);
    const Matrix4 a1 = system_matrix(coeffs_[2 * n + 2], lambda, kappa);

    const Matrix4 k1 = multiply(a0, y);
    const Matrix4 k2 = multiply(ah, axpy(y, 0.5 * h, k1));
    const Matrix4 k3 = multiply(ah, axpy(y, 0.5 * h, k2));
    const Matrix4 k4 = multiply(a1, axpy(y, h, k3));
    rk4_update(y, h, k1, k2, k3, k4);

    const Matrix6 c0 = second_compound(a0);
    const Matrix6 ch = second_compound(ah);
    const Matrix6 c1 = second_compound(a1);
    const Matrix6 q1 = multiply(c0, c);
    const Matrix6 q2 = multiply(ch, axpy(c, 0.5 * h, q1));
    const Matrix6 q3 = multiply(ch, axpy(c, 0.5 * h, q2));
    const Matrix6 q4 = multiply(c1, axpy(c, h, q3));
    rk4_update(c, h, q1, q2, q3, q4);
  }
  double minor_sum = 0.0;
  for (int r = 0; r < 6; ++r) minor_sum += c[r][r];
  return {lambda, y, minor_sum};
}

Monodromy monodromy(const PeriodicWave& wave, double lambda, std::size_t steps) {
  return FloquetProblem(wave, steps).monodromy(lambda);
}

Multipliers floquet_multipliers(const Monodromy& m) {
  using C = std::complex<double>;
  const double t = m.trace();
  const double s = m.minor_sum;
  // nu^2 - T nu + (S - 2) = 0, nu = mu + 1/mu.
  const double disc = t * t - 4.0 * (s - 2.0);
  C nu_big;
  C nu_small;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    const double big = 0.5 * (t + (t >= 0.0 ? root : -root));
    nu_big = big;
    nu_small = big == 0.0 ? 0.0 : (s - 2.0) / big;
  } else {
    const double im = 0.5 * std::sqrt(-disc);
    nu_big = C(0.5 * t, im);
    nu_small = C(0.5 * t, -im);
  }
  const C mu1 = larger_root(nu_big);
  const C mu2 = larger_root(nu_small);
  return {mu1, 1.0 / mu1, mu2, 1.0 / mu2};
}

Multipliers eigenvalues_direct(const Matrix4& m) {
  Eigen::Matrix4d a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = m[i][j];
  Eigen::EigenSolver<Eigen::Matrix4d> solver(a, false);
  if (solver.info() != Eigen::Success) throw NumericalError("eigen-solver failed on monodromy");
  Multipliers out;
  for (int i = 0; i < 4; ++i) out[i] = solver.eigenvalues()(i);
  return out;
}

std::complex<double> evans(const Monodromy& m, double period, double xi) {
  Eigen::Matrix4cd a;
  const std::complex<double> z = std::polar(1.0, xi * period);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = m.m[i][j] - (i == j ? z : 0.0);
  return a.determinant();
}

std::complex<double> evans(const PeriodicWave& wave, double lambda, double xi) {
  return evans(monodromy(wave, lambda), wave.period(), xi);
}

bool has_unit_multiplier(const Monodromy& m, double tol) {
  const Multipliers mu = floquet_multipliers(m);
  return std::any_of(mu.begin(), mu.end(),
                     [tol](const auto& z) { return std::abs(std::abs(z) - 1.0) <= tol; });
}

LeadingEigenvalue leading_eigenvalue(const FloquetProblem& problem, double hint) {
  if (!(hint > 0.0) || !std::isfinite(hint)) throw DomainError("eigenvalue hint must be positive");
  // |mu|^2 - 1 ~ 2 (|mu_half| - 1) near the circle.
  const auto in_spectrum = [&](double lambda) {
    return has_unit_multiplier(problem.half_monodromy(lambda), 0.5e-6);
  };
  constexpr double kFloor = 1e-10;
  const double step = hint / 200.0;

  double lo = 0.0;  // in the spectrum
  double hi = 0.0;  // above it
  if (in_spectrum(hint)) {
    lo = hint;
    hi = hint + step;
    // The hint should lie above the spectrum; allow a bounded climb before
    // declaring the continuation lost.
    for (int i = 0; in_spectrum(hi); ++i) {
      if (i >= 200) return {hint, false};
      lo = hi;
      hi += step;
    }
  } else {
    hi = hint;
    bool found = false;
    for (int k = 1; k < 200; ++k) {
      const double lambda = hint - step * k;
      if (in_spectrum(lambda)) {
        lo = lambda;
        found = true;
        break;
      }
      hi = lambda;
    }
    if (!found) {
      if (!in_spectrum(kFloor)) return {0.0, false};
      lo = kFloor;
    }
  }
  while (hi - lo > 1e-8 * hi) {
    const double mid = 0.5 * (lo + hi);
    (in_spectrum(mid) ? lo : hi) = mid;
  }
  return {0.5 * (lo + hi), true};
}

LeadingEigenvalue leading_eigenvalue(const PeriodicWave& wave, double hint) {
  return leading_eigenvalue(FloquetProblem(wave), hint);
}

std::vector<double> default_amplitude_grid(const ModelParams& params) {
  params.validate();
  const double b = params.binodal();
  std::vector<double> out;
  constexpr int kUniform = 48;
  for (int i = 0; i < kUniform; ++i) {
    out.push_back(b * (1e-3 + (0.95 - 1e-3) * i / (kUniform - 1)));
  }
  for (double g = 0.05 * std::pow(10.0, -0.125); g >= 1e-8 * (1.0 - 1e-12);
       g *= std::pow(10.0, -0.125)) {
    out.push_back(b * (1.0 - g));
  }
  return out;
}

EigenTable build_eigen_table(const ModelParams& params, std::span<const double> amplitudes,
                             std::size_t steps) {
  params.validate();
  EigenTable table{params, params.kappa, {}, std::nullopt, true};
  const double b = params.binodal();
  double hint = params.beta * params.beta / (4.0 * params.kappa) * 1.01;
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    const double a = amplitudes[i];
    if (i > 0 && !(a > amplitudes[i - 1])) throw DomainError("amplitude grid must ascend");
    const PeriodicWave wave = PeriodicWave::from_amplitude(a, params);
    const LeadingEigenvalue lead = leading_eigenvalue(FloquetProblem(wave, steps), hint);
    if (!lead.resolved) {
      table.break_row = i;
      break;
    }
    // A non-decreasing step means the multipliers have reached the rounding
    // floor of the monodromy; the continuation ends there.
    if (!table.rows.empty() && !(lead.lambda < table.rows.back().lambda)) {
      table.monotone = false;
      table.break_row = i;
      break;
    }
    table.rows.push_back({a, b - a, wave.period(), lead.lambda});
    hint = lead.lambda;
  }
  return table;
}

EigenTable rescale_eigen_table(const EigenTable& table, double kappa) {
  ModelParams params = table.params;
  params.kappa = kappa;
  params.validate();
  EigenTable out{params, table.kappa0, {}, table.break_row, table.monotone};
  const double factor = table.params.kappa / kappa;
  for (const auto& r : table.rows) {
    const PeriodicWave wave = PeriodicWave::from_gap(r.gap, params);
    out.rows.push_back({r.a, r.gap, wave.period(), r.lambda * factor});
  }
  return out;
}

void write_eigen_table_csv(std::ostream& out, const EigenTable& table) {
  out << "a,p,lambda_max,kappa0\n";
  for (const auto& r : table.rows) {
    out << csv::num(r.a) << ',' << csv::num(r.p) << ',' << csv::num(r.lambda) << ','
        << csv::num(table.kappa0) << '\n';
  }
}

EigenTable read_eigen_table_csv(std::istream& in, const ModelParams& params) {
  params.validate();
  EigenTable table{params, params.kappa, {}, std::nullopt, true};
  const double b = params.binodal();
  for (const auto& cells : csv::read(in, "a,p,lambda_max,kappa0")) {
    if (cells.size() != 4) throw std::runtime_error("eigen table: expected 4 columns");
    const double a = std::stod(cells[0]);
    table.rows.push_back({a, b - a, std::stod(cells[1]), std::stod(cells[2])});
    table.kappa0 = std::stod(cells[3]);
    if (table.rows.size() > 1 && !(table.rows.back().lambda < table.rows[table.rows.size() - 2].lambda))
      table.monotone = false;
  }
  if (table.rows.empty()) throw std::runtime_error("eigen table: no rows");
  return table;
}

}  // namespace coarsekit
