#include "pcb/sbp.hpp"

#include <cmath>
#include <stdexcept>

namespace pcb {

double legendre_eval(int n, double x) {
  if (n == 0) return 1.0;
  if (n == 1) return x;
  double pm = 1.0, p = x;
  for (int m = 1; m < n; ++m) {
    const double next = ((2.0 * m + 1.0) * x * p - m * pm) / (m + 1.0);
    pm = p;
    p = next;
  }
  return p;
}

double legendre_derivative(int n, double x) {
  if (n == 0) return 0.0;
  // (1-x^2) P_n' = n (P_{n-1} - x P_n); endpoints via the exact value
  if (std::abs(1.0 - x * x) < 1e-14) {
    const double v = 0.5 * n * (n + 1.0);
    return (x > 0.0) ? v : (n % 2 == 0 ? -v : v);
  }
  return n * (legendre_eval(n - 1, x) - x * legendre_eval(n, x)) / (1.0 - x * x);
}

bool SBPOperatorSet::is_lobatto() const {
  if (nodes.empty()) return false;
  return std::abs(nodes.front() + 1.0) < 1e-12 && std::abs(nodes.back() - 1.0) < 1e-12;
}

namespace {

// Interior GLL nodes are the roots of P_p'. Newton with Chebyshev-Lobatto
// starting points; second derivative from the Legendre ODE.
std::vector<double> gll_nodes(int p) {
  std::vector<double> z(p + 1);
  z[0] = -1.0;
  z[p] = 1.0;
  for (int i = 1; i < p; ++i) {
    double x = -std::cos(M_PI * i / p);
    for (int it = 0; it < 100; ++it) {
      const double f = legendre_derivative(p, x);
      const double fp = (2.0 * x * f - p * (p + 1.0) * legendre_eval(p, x)) / (1.0 - x * x);
      const double dx = f / fp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    z[i] = x;
  }
  return z;
}

Matrix differentiation_matrix(const std::vector<double>& nodes) {
  const int n = static_cast<int>(nodes.size());
  std::vector<double> bary(n, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (j != i) bary[i] /= (nodes[i] - nodes[j]);
  Matrix d(n, n);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      d(i, j) = (bary[j] / bary[i]) / (nodes[i] - nodes[j]);
      diag -= d(i, j);
    }
    d(i, i) = diag;  // negative-sum trick: exact derivative of constants
  }
  return d;
}

}  // namespace

SBPOperatorSet lobatto_operators(int p) {
  if (p < 1 || p > 20) throw std::invalid_argument("lobatto_operators: degree must be in [1, 20]");
  SBPOperatorSet ops;
  ops.degree = p;
  ops.nodes = gll_nodes(p);
  ops.mnorm.resize(p + 1);
  for (int i = 0; i <= p; ++i) {
    const double lp = legendre_eval(p, ops.nodes[i]);
    ops.mnorm[i] = 2.0 / (p * (p + 1.0) * lp * lp);
  }
  ops.d = differentiation_matrix(ops.nodes);
  ops.r = Matrix(2, p + 1);
  ops.r(0, 0) = 1.0;
  ops.r(1, p) = 1.0;
  return ops;
}

SBPOperatorSet fv_operator() {
  SBPOperatorSet ops;
  ops.degree = 0;
  ops.nodes = {0.0};
  ops.mnorm = {2.0};
  ops.d = Matrix(1, 1);
  ops.r = Matrix(2, 1);
  ops.r(0, 0) = 1.0;
  ops.r(1, 0) = 1.0;
  return ops;
}

SbpCheck verify_sbp(const SBPOperatorSet& ops, double tol) {
  const int n = ops.node_count();
  Matrix md(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) md(i, j) = ops.mnorm[i] * ops.d(i, j);
  Matrix lhs = md + md.transposed();
  // R^T B R with B = diag(-1, +1)
  Matrix rbr(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      rbr(i, j) = -ops.r(0, i) * ops.r(0, j) + ops.r(1, i) * ops.r(1, j);
  const double res = max_abs(lhs - rbr);
  return {res <= tol, res};
}

FilterMatrix exponential_filter(const SBPOperatorSet& ops, int order, double strength) {
  if (order < 1) throw std::invalid_argument("exponential_filter: order must be >= 1");
  if (strength < 0.0) throw std::invalid_argument("exponential_filter: strength must be >= 0");
  const int p = ops.degree;
  const int n = p + 1;
  FilterMatrix filter;
  filter.degree = p;
  filter.sigma.resize(n);
  for (int k = 0; k < n; ++k) {
    const double eta = (p == 0) ? 0.0 : static_cast<double>(k) / p;
    filter.sigma[k] = std::exp(-strength * std::pow(eta, 2.0 * order));
  }
  filter.sigma[0] = 1.0;

  // Discrete Legendre transform on the set's nodes: V_{nj} = P_j(z_n).
  // V^T W V is diagonal for a quadrature exact to degree 2p-1, so the
  // modal projection is G^{-1} V^T W and the filter is V Sigma G^{-1} V^T W.
  Matrix v(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v(i, j) = legendre_eval(j, ops.nodes[i]);
  std::vector<double> g(n, 0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g[j] += ops.mnorm[i] * v(i, j) * v(i, j);

  filter.nodal = Matrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += v(i, k) * filter.sigma[k] * v(j, k) / g[k];
      filter.nodal(i, j) = s * ops.mnorm[j];
    }
  return filter;
}

}  // namespace pcb
