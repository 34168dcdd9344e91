#pragma once

#include <vector>

#include "pcb/small_linalg.hpp"

namespace pcb {

/// Diagonal-norm nodal operator set (D, M, R, B) on the reference element
/// [-1, 1] with B = diag(-1, +1). Satisfies M D + D^T M = R^T B R.
struct SBPOperatorSet {
  int degree = 0;               // p
  std::vector<double> nodes;    // p+1 nodes, ascending
  Matrix d;                     // (p+1)^2 derivative matrix
  std::vector<double> mnorm;    // positive diagonal of the norm matrix
  Matrix r;                     // 2 x (p+1) boundary restriction

  int node_count() const { return degree + 1; }
  bool is_lobatto() const;      // nodal basis including both endpoints
};

/// Gauss-Lobatto-Legendre operator set of degree 1 <= p <= 20. Nodes are the
/// roots of (1-z^2) P_p'(z) found by Newton iteration; the norm holds the GLL
/// quadrature weights; D is the Lagrange differentiation matrix.
SBPOperatorSet lobatto_operators(int p);

/// Degenerate single-node set (the p = 0 finite-volume limit): node {0},
/// norm {2}, D = 0, both restriction rows pick the cell value.
SBPOperatorSet fv_operator();

struct SbpCheck {
  bool ok = false;
  double residual = 0.0;
};
/// Max-norm residual of M D + D^T M - R^T B R against tol.
SbpCheck verify_sbp(const SBPOperatorSet& ops, double tol);

/// Legendre polynomial helpers shared with the filter and tests.
double legendre_eval(int n, double x);
double legendre_derivative(int n, double x);

/// Modal exponential filter, conjugated to nodal space:
/// sigma_k = exp(-eps (k/p)^(2s)), sigma_0 = 1, applied via the discrete
/// Legendre transform on the set's nodes. Preserves the element mean.
struct FilterMatrix {
  int degree = 0;
  std::vector<double> sigma;  // p+1 modal damping factors
  Matrix nodal;               // (p+1)^2 operator in nodal values
};
FilterMatrix exponential_filter(const SBPOperatorSet& ops, int order, double strength);

}  // namespace pcb
