#pragma once

// Complete elliptic integral of the first kind and the Jacobi elliptic
// functions sn, cn, dn on the real line.

#include <vector>

namespace coarsekit {

/// Elliptic modulus carried together with its complement k' = sqrt(1-k^2),
/// so that moduli extremely close to 1 keep full relative precision in k'.
class EllipticModulus {
 public:
  /// 0 <= k <= 1, otherwise DomainError.
  static EllipticModulus from_k(double k);
  /// From the complementary modulus k' in [0, 1].
  static EllipticModulus from_complement(double kc);

  double k() const { return k_; }
  double complement() const { return kc_; }

 private:
  EllipticModulus(double k, double kc) : k_(k), kc_(kc) {}
  double k_;
  double kc_;
};

/// K(k) by the arithmetic-geometric mean. Throws DomainError at k = 1.
double complete_elliptic_k(const EllipticModulus& m);
double complete_elliptic_k(double k);

struct JacobiTriple {
  double sn;
  double cn;
  double dn;
};

/// sn, cn, dn by descending Landen transformation (AGM sequence).
JacobiTriple jacobi_elliptic(double u, const EllipticModulus& m);
double jacobi_sn(double u, double k);

/// Jacobi functions for a fixed modulus with the Landen sequence cached,
/// for repeated evaluation along a grid.
class JacobiEvaluator {
 public:
  explicit JacobiEvaluator(const EllipticModulus& m);

  JacobiTriple operator()(double u) const;
  const EllipticModulus& modulus() const { return modulus_; }

 private:
  EllipticModulus modulus_;
  std::vector<double> ratios_;  // c_n / a_n, n = 1..N
  double scale_ = 1.0;          // 2^N a_N
};

}  // namespace coarsekit
