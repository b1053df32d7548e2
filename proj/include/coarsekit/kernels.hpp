#pragma once

// Data-parallel inner loops of the spectral solver. Every kernel has a scalar
// reference and an AVX2/FMA variant; the variant is chosen once at runtime.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace coarsekit::kernels {

struct KernelTable {
  std::string_view name;
  /// out = alpha phi^3 - (beta + s) phi
  void (*nonlinear_term)(const double* phi, double* out, std::size_t n, double alpha,
                         double beta, double s);
  /// hat = keep * hat - forcing * nl, complex arrays of length n
  void (*spectral_update)(std::complex<double>* hat, const std::complex<double>* nl,
                          const double* keep, const double* forcing, std::size_t n);
  /// sum of (alpha/4)(phi^2 - beta/alpha)^2
  double (*bulk_energy_sum)(const double* phi, std::size_t n, double alpha, double beta);
  /// sum of weight * |hat|^2
  double (*weighted_power_sum)(const std::complex<double>* hat, const double* weight,
                               std::size_t n);
};

const KernelTable& scalar_kernels();
/// nullptr when the CPU lacks AVX2 or FMA.
const KernelTable* avx2_kernels();

/// AVX2 when available, unless COARSEKIT_SIMD=scalar is set.
const KernelTable& active_kernels();

}  // namespace coarsekit::kernels
