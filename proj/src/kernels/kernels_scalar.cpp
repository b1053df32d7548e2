#include "coarsekit/kernels.hpp"

namespace coarsekit::kernels {

namespace {

void nonlinear_term(const double* phi, double* out, std::size_t n, double alpha, double beta,
                    double s) {
  const double c = beta + s;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = phi[i];
    out[i] = v * (alpha * v * v - c);
  }
}

void spectral_update(std::complex<double>* hat, const std::complex<double>* nl,
                     const double* keep, const double* forcing, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) hat[i] = keep[i] * hat[i] - forcing[i] * nl[i];
}

double bulk_energy_sum(const double* phi, std::size_t n, double alpha, double beta) {
  const double shift = beta / alpha;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = phi[i] * phi[i] - shift;
    sum += d * d;
  }
  return 0.25 * alpha * sum;
}

double weighted_power_sum(const std::complex<double>* hat, const double* weight,
                          std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += weight[i] * std::norm(hat[i]);
  return sum;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", nonlinear_term, spectral_update, bulk_energy_sum,
                                 weighted_power_sum};
  return table;
}

}  // namespace coarsekit::kernels
