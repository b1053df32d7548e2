#pragma once

// Quartic double-well Cahn-Hilliard model: parameters, bulk potential and
// the closed-form constants that follow from them.

namespace coarsekit {

/// Parameters of phi_t = (-kappa phi_xx + F'(phi))_xx on [-L, L] with
/// F(phi) = (alpha/4)(phi^2 - beta/alpha)^2 and unit mobility.
struct ModelParams {
  double alpha = 1.0;
  double beta = 1.0;
  double kappa = 1e-3;
  double half_length = 1.0;

  /// Throws DomainError unless every coefficient is positive and finite.
  void validate() const;

  double binodal() const;
};

/// F and its first three derivatives; `order` outside 0..3 throws.
double potential(double phi, int order, const ModelParams& params);

/// Growth rate of exp(i xi x) about phi = 0: -kappa xi^4 + beta xi^2.
double dispersion(double xi, const ModelParams& params);

struct DerivedConstants {
  double binodal;
  double p_min;     // a -> 0 limit of the wave period
  double p_s;       // spinodal (fastest growing) period
  double xi_s;      // spinodal wavenumber
  double lambda_s;  // spinodal growth rate
  double e_max;     // energy of phi == 0 on [-L, L]
  double e_min;     // kink energy on [-L, L]
  double a_s;       // amplitude of the periodic wave with period p_s
  double e_s;       // energy of that wave
};

/// Closed-form constants only (a_s and e_s are left as NaN).
DerivedConstants closed_form_constants(const ModelParams& params);

/// All constants, including a_s (root of p(a) = p_s) and e_s.
DerivedConstants derived_constants(const ModelParams& params);

}  // namespace coarsekit
