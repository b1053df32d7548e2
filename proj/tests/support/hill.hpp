#pragma once

// Fourier-Bloch (Hill's method) eigenvalues of psi -> (b psi - kappa psi'')''
// about a periodic wave, for cross-checking the monodromy route.

#include <Eigen/Dense>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "coarsekit/core_model.hpp"

namespace testing_support {

class HillOracle {
 public:
  HillOracle(double a, const coarsekit::ModelParams& p, int modes = 60)
      : params_(p), modes_(modes) {
    const double h = std::sqrt((p.beta - 0.5 * p.alpha * a * a) / p.kappa);
    const double k = std::sqrt(p.alpha * a * a / (2 * p.kappa * h * h));
    period_ = 4 * boost::math::ellint_1(k) / h;
    // b = 3 alpha phi^2 - beta has period p/2; take its Fourier coefficients.
    const double half = 0.5 * period_;
    const int n = 2048;
    std::vector<double> b(n);
    for (int j = 0; j < n; ++j) {
      const double phi = a * boost::math::jacobi_sn(k, h * half * j / n);
      b[j] = 3 * p.alpha * phi * phi - p.beta;
    }
    coeffs_.assign(4 * modes_ + 1, 0.0);
    for (int m = -2 * modes_; m <= 2 * modes_; ++m) {
      std::complex<double> acc = 0.0;
      for (int j = 0; j < n; ++j) acc += b[j] * std::polar(1.0, -2 * std::numbers::pi * m * j / n);
      coeffs_[m + 2 * modes_] = acc / static_cast<double>(n);
    }
  }

  double period() const { return period_; }

  /// Largest eigenvalue over Bloch numbers sampled on [0, q/2].
  double leading(int bloch_samples = 81) const {
    const double q = 4 * std::numbers::pi / period_;
    double best = -1e300;
    for (int s = 0; s < bloch_samples; ++s) {
      const double mu = 0.5 * q * s / (bloch_samples - 1);
      best = std::max(best, leading_at(mu, q));
    }
    return best;
  }

 private:
  double leading_at(double mu, double q) const {
    const int dim = 2 * modes_ + 1;
    Eigen::MatrixXcd a(dim, dim);
    Eigen::VectorXd w(dim);
    for (int i = 0; i < dim; ++i) w(i) = std::abs(mu + (i - modes_) * q);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        std::complex<double> h = coeffs_[i - j + 2 * modes_];
        if (i == j) h += params_.kappa * w(i) * w(i);
        a(i, j) = -w(i) * h * w(j);
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
  }

  coarsekit::ModelParams params_;
  int modes_;
  double period_ = 0.0;
  std::vector<std::complex<double>> coeffs_;
};

}  // namespace testing_support
