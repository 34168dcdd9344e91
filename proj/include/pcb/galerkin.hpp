#pragma once

#include <span>
#include <vector>

#include "pcb/pc_basis.hpp"
#include "pcb/small_linalg.hpp"

namespace pcb {

/// PC coefficient vector (u_0, ..., u_M) at one location.
using ModeVector = std::vector<double>;

struct Moments {
  double expectation = 0.0;
  double variance = 0.0;
};

/// Nodal quadratic form q_k = sum_{i,j} <phi_i phi_j phi_k> u_i v_j for the
/// symmetrized pair (u,v); the building block of flux and volume kernels.
/// Accumulates in extended precision.
inline double tensor_pair_sum(const TripleProductTensor& tensor, int k,
                              std::span<const double> u, std::span<const double> v) {
  long double acc = 0.0L;
  for (const auto& p : tensor.pairs(k)) {
    const long double term = static_cast<long double>(u[p.i]) * v[p.j] +
                             (p.i == p.j ? 0.0L : static_cast<long double>(u[p.j]) * v[p.i]);
    acc += p.value * term;
  }
  return static_cast<double>(acc);
}

/// [A(u)]_{jk} = sum_i <phi_i phi_j phi_k> u_i, symmetric.
Matrix assemble_A(std::span<const double> u, const TripleProductTensor& tensor);

/// f_k(u) = 1/2 sum_{i,j} <phi_i phi_j phi_k> u_i u_j, i.e. 1/2 A(u) u.
void flux_into(std::span<const double> u, const TripleProductTensor& tensor,
               std::span<double> out);
ModeVector flux(std::span<const double> u, const TripleProductTensor& tensor);

/// psi(u) = 1/6 u^T A(u) u. Its gradient is the flux.
double flux_potential(std::span<const double> u, const TripleProductTensor& tensor);

/// U(u) = 1/2 sum u_i^2 and F(u) = u^T f(u) - psi(u).
double entropy(std::span<const double> u);
double entropy_flux(std::span<const double> u, const TripleProductTensor& tensor);

/// Eigenvalues of the symmetric system matrix A(u), ascending.
std::vector<double> eigenvalues(std::span<const double> u, const TripleProductTensor& tensor);
double max_abs_eigenvalue(std::span<const double> u, const TripleProductTensor& tensor);

/// E(u) = u_0, Var(u) = sum_{i>=1} u_i^2 for the normalized basis.
Moments moments(std::span<const double> u);

}  // namespace pcb
