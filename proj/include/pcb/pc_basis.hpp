#pragma once

#include <cstdint>
#include <vector>

namespace pcb {

/// Normalized probabilists' Hermite polynomial phi_i(xi), orthonormal
/// w.r.t. the Gaussian density omega(xi) = exp(-xi^2/2)/sqrt(2*pi).
double hermite_eval(int i, double xi);

/// phi_i(xi) * omega(xi). Appears in the boundary terms of the
/// integrated-by-parts coefficient integrals.
double hermite_weighted_eval(int i, double xi);

/// Gaussian density omega and its CDF.
double gauss_density(double xi);
double gauss_cdf(double xi);

/// Closed-form triple product <phi_i phi_j phi_k>.
/// Zero when i+j+k is odd or max(i,j,k) > (i+j+k)/2, otherwise
/// sqrt(i!j!k!) / ((s-i)!(s-j)!(s-k)!) with s = (i+j+k)/2.
/// Factorials are evaluated in log space so the value stays accurate
/// for orders well past where i!^3 overflows.
double hermite_triple(int i, int j, int k);

/// All triple products up to order M, stored sparsely.
/// Symmetric lookup: entry(i,j,k) equals entry of any index permutation.
class TripleProductTensor {
 public:
  explicit TripleProductTensor(int order);

  int order() const { return order_; }
  double entry(int i, int j, int k) const;

  /// Compressed per-k pair list: (i <= j, value = <phi_i phi_j phi_k>).
  struct Pair {
    int32_t i;
    int32_t j;
    double value;
  };
  const std::vector<Pair>& pairs(int k) const { return pairs_[k]; }

 private:
  int order_;
  std::vector<double> dense_;  // (M+1)^3 lookup
  std::vector<std::vector<Pair>> pairs_;
};

inline TripleProductTensor build_tensor(int order) { return TripleProductTensor(order); }

/// Gauss-Hermite rule for the weight omega (unit total mass): nodes and
/// weights computed by Golub-Welsch on the symmetric Jacobi matrix of the
/// probabilists' recurrence.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_hermite_rule(int n);

/// Brute-force quadrature of the triple-product integral; independent of
/// hermite_triple. Rejects rules too small to integrate the degree-(i+j+k)
/// integrand exactly.
double triple_quadrature_oracle(int i, int j, int k, int quadrature_size);

/// Classical orthogonal families used by the generalized reference solutions.
struct OrthogonalFamily {
  enum class Kind { HermiteNormalized, Jacobi, Laguerre };
  Kind kind = Kind::HermiteNormalized;
  double alpha = 0.0;  // Jacobi/Laguerre parameter, > -1
  double beta = 0.0;   // Jacobi parameter, > -1

  static OrthogonalFamily hermite() { return {Kind::HermiteNormalized, 0.0, 0.0}; }
  static OrthogonalFamily jacobi(double a, double b) { return {Kind::Jacobi, a, b}; }
  static OrthogonalFamily laguerre(double a) { return {Kind::Laguerre, a, 0.0}; }
};

/// P_n^{(alpha,beta)}(xi) by the standard three-term recurrence.
double jacobi_eval(int n, double alpha, double beta, double xi);

/// Generalized Laguerre L_n^{(alpha)}(xi); L_1^{(alpha)} = 1 + alpha - xi.
double laguerre_eval(int n, double alpha, double xi);

/// Family dispatch. Rejects Jacobi/Laguerre parameters <= -1.
double family_eval(const OrthogonalFamily& family, int n, double xi);

/// Weight function of the family (with support indicator) and the
/// squared-norm constant <phi_n, phi_n>.
double family_weight(const OrthogonalFamily& family, double xi);
double family_norm2(const OrthogonalFamily& family, int n);

}  // namespace pcb
