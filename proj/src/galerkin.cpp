#include "pcb/galerkin.hpp"

#include <cmath>
#include <stdexcept>

namespace pcb {

namespace {
void check_order(std::span<const double> u, const TripleProductTensor& tensor,
                 const char* where) {
  if (tensor.order() + 1 != static_cast<int>(u.size()))
    throw std::invalid_argument(std::string(where) + ": tensor order does not match mode count");
}
}  // namespace

Matrix assemble_A(std::span<const double> u, const TripleProductTensor& tensor) {
  check_order(u, tensor, "assemble_A");
  const int n = tensor.order() + 1;
  Matrix a(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        const double t = tensor.entry(i, j, k);
        if (t != 0.0) s += t * u[i];
      }
      a(j, k) = s;
      a(k, j) = s;
    }
  return a;
}

void flux_into(std::span<const double> u, const TripleProductTensor& tensor,
               std::span<double> out) {
  check_order(u, tensor, "flux");
  const int n = tensor.order() + 1;
  for (int k = 0; k < n; ++k) out[k] = 0.5 * tensor_pair_sum(tensor, k, u, u);
}

ModeVector flux(std::span<const double> u, const TripleProductTensor& tensor) {
  ModeVector f(u.size());
  flux_into(u, tensor, f);
  return f;
}

double flux_potential(std::span<const double> u, const TripleProductTensor& tensor) {
  check_order(u, tensor, "flux_potential");
  // psi = 1/6 sum_{ijk} <...> u_i u_j u_k = 1/3 u^T f(u)
  const int n = tensor.order() + 1;
  long double acc = 0.0L;
  for (int k = 0; k < n; ++k)
    acc += static_cast<long double>(u[k]) * (0.5L * tensor_pair_sum(tensor, k, u, u));
  return static_cast<double>(acc / 3.0L);
}

double entropy(std::span<const double> u) {
  long double acc = 0.0L;
  for (double v : u) acc += static_cast<long double>(v) * v;
  return static_cast<double>(0.5L * acc);
}

double entropy_flux(std::span<const double> u, const TripleProductTensor& tensor) {
  check_order(u, tensor, "entropy_flux");
  const int n = tensor.order() + 1;
  long double uf = 0.0L;
  for (int k = 0; k < n; ++k)
    uf += static_cast<long double>(u[k]) * (0.5L * tensor_pair_sum(tensor, k, u, u));
  // F = u^T f - psi with psi = (1/3) u^T f
  return static_cast<double>(uf * (2.0L / 3.0L));
}

std::vector<double> eigenvalues(std::span<const double> u, const TripleProductTensor& tensor) {
  check_order(u, tensor, "eigenvalues");
  return symmetric_eigenvalues(assemble_A(u, tensor));
}

double max_abs_eigenvalue(std::span<const double> u, const TripleProductTensor& tensor) {
  check_order(u, tensor, "max_abs_eigenvalue");
  const int n = tensor.order() + 1;
  if (n <= 16) {
    double a[16 * 16] = {};
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
          const double t = tensor.entry(i, j, k);
          if (t != 0.0) s += t * u[i];
        }
        a[j * n + k] = s;
        a[k * n + j] = s;
      }
    double eig[16];
    symmetric_eigenvalues_inplace(a, n, eig);
    return std::max(std::abs(eig[0]), std::abs(eig[n - 1]));
  }
  const auto eig = eigenvalues(u, tensor);
  return std::max(std::abs(eig.front()), std::abs(eig.back()));
}

Moments moments(std::span<const double> u) {
  Moments m;
  if (u.empty()) return m;
  m.expectation = u[0];
  long double var = 0.0L;
  for (size_t i = 1; i < u.size(); ++i) var += static_cast<long double>(u[i]) * u[i];
  m.variance = static_cast<double>(var);
  return m;
}

}  // namespace pcb
