#include "pcb/pc_basis.hpp"

#include <cmath>
#include <stdexcept>

#include "pcb/small_linalg.hpp"

namespace pcb {

namespace {
constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;
}

double hermite_eval(int i, double xi) {
  if (i < 0) throw std::invalid_argument("hermite_eval: negative degree");
  if (i == 0) return 1.0;
  if (i == 1) return xi;
  // phi_{n+1} = (xi phi_n - sqrt(n) phi_{n-1}) / sqrt(n+1)
  double pm = 1.0, p = xi;
  for (int n = 1; n < i; ++n) {
    const double next = (xi * p - std::sqrt(static_cast<double>(n)) * pm) / std::sqrt(n + 1.0);
    pm = p;
    p = next;
  }
  return p;
}

double gauss_density(double xi) { return kInvSqrt2Pi * std::exp(-0.5 * xi * xi); }

double gauss_cdf(double xi) { return 0.5 * std::erfc(-xi / std::sqrt(2.0)); }

double hermite_weighted_eval(int i, double xi) {
  // Recurring the product phi_n * omega directly keeps the evaluation finite
  // for large |xi| where phi_n alone overflows against the vanishing weight.
  if (i < 0) throw std::invalid_argument("hermite_weighted_eval: negative degree");
  const double w = gauss_density(xi);
  if (i == 0) return w;
  double pm = w, p = xi * w;
  for (int n = 1; n < i; ++n) {
    const double next = (xi * p - std::sqrt(static_cast<double>(n)) * pm) / std::sqrt(n + 1.0);
    pm = p;
    p = next;
  }
  return p;
}

double hermite_triple(int i, int j, int k) {
  if (i < 0 || j < 0 || k < 0) throw std::invalid_argument("hermite_triple: negative index");
  const int t = i + j + k;
  if (t % 2 != 0) return 0.0;
  const int s = t / 2;
  if (i > s || j > s || k > s) return 0.0;
  const double lg = 0.5 * (std::lgamma(i + 1.0) + std::lgamma(j + 1.0) + std::lgamma(k + 1.0)) -
                    std::lgamma(s - i + 1.0) - std::lgamma(s - j + 1.0) - std::lgamma(s - k + 1.0);
  return std::exp(lg);
}

TripleProductTensor::TripleProductTensor(int order) : order_(order) {
  if (order < 0) throw std::invalid_argument("TripleProductTensor: order must be >= 0");
  const int n = order + 1;
  dense_.assign(static_cast<size_t>(n) * n * n, 0.0);
  pairs_.resize(n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const double v = hermite_triple(i, j, k);
        if (v == 0.0) continue;
        pairs_[k].push_back({i, j, v});
        dense_[(static_cast<size_t>(i) * n + j) * n + k] = v;
        dense_[(static_cast<size_t>(j) * n + i) * n + k] = v;
      }
    }
  }
}

double TripleProductTensor::entry(int i, int j, int k) const {
  const int n = order_ + 1;
  if (i < 0 || j < 0 || k < 0 || i >= n || j >= n || k >= n)
    throw std::out_of_range("TripleProductTensor::entry: index out of range");
  return dense_[(static_cast<size_t>(i) * n + j) * n + k];
}

QuadratureRule gauss_hermite_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite_rule: need at least one node");
  // Jacobi matrix of the probabilists' recurrence: zero diagonal,
  // off-diagonal sqrt(i). Total mass of omega is one.
  Matrix jac(n, n);
  for (int i = 1; i < n; ++i) {
    jac(i, i - 1) = std::sqrt(static_cast<double>(i));
    jac(i - 1, i) = jac(i, i - 1);
  }
  QuadratureRule rule;
  rule.nodes = symmetric_eigenvalues(jac);
  rule.weights.resize(n);
  // Newton-polish the eigenvalue estimates on phi_n (phi_n' = sqrt(n)
  // phi_{n-1}) and take the Christoffel weights 1 / sum_k phi_k^2. The tail
  // weights are tiny against huge polynomial values, so they need full
  // relative accuracy, not just the absolute accuracy the eigensolve gives.
  for (int j = 0; j < n; ++j) {
    double x = rule.nodes[j];
    for (int it = 0; it < 50; ++it) {
      const double dx =
          hermite_eval(n, x) / (std::sqrt(static_cast<double>(n)) * hermite_eval(n - 1, x));
      x -= dx;
      if (std::abs(dx) < 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    rule.nodes[j] = x;
    double christoffel = 0.0;
    for (int k = 0; k < n; ++k) {
      const double p = hermite_eval(k, x);
      christoffel += p * p;
    }
    rule.weights[j] = 1.0 / christoffel;
  }
  return rule;
}

double triple_quadrature_oracle(int i, int j, int k, int quadrature_size) {
  const int needed = (i + j + k) / 2 + 1;
  if (quadrature_size < needed)
    throw std::invalid_argument("triple_quadrature_oracle: quadrature size too small");
  const QuadratureRule rule = gauss_hermite_rule(quadrature_size);
  double acc = 0.0;
  for (int q = 0; q < quadrature_size; ++q) {
    const double x = rule.nodes[q];
    acc += rule.weights[q] * hermite_eval(i, x) * hermite_eval(j, x) * hermite_eval(k, x);
  }
  return acc;
}

double jacobi_eval(int n, double alpha, double beta, double xi) {
  if (alpha <= -1.0 || beta <= -1.0)
    throw std::invalid_argument("jacobi_eval: parameters must be > -1");
  if (n < 0) throw std::invalid_argument("jacobi_eval: negative degree");
  if (n == 0) return 1.0;
  double pm = 1.0;
  double p = 0.5 * (alpha - beta) + 0.5 * (alpha + beta + 2.0) * xi;
  for (int m = 2; m <= n; ++m) {
    const double a = 2.0 * m * (m + alpha + beta) * (2.0 * m + alpha + beta - 2.0);
    const double b = (2.0 * m + alpha + beta - 1.0) *
                     ((2.0 * m + alpha + beta) * (2.0 * m + alpha + beta - 2.0) * xi +
                      alpha * alpha - beta * beta);
    const double c = 2.0 * (m + alpha - 1.0) * (m + beta - 1.0) * (2.0 * m + alpha + beta);
    const double next = (b * p - c * pm) / a;
    pm = p;
    p = next;
  }
  return p;
}

double laguerre_eval(int n, double alpha, double xi) {
  if (alpha <= -1.0) throw std::invalid_argument("laguerre_eval: parameter must be > -1");
  if (n < 0) throw std::invalid_argument("laguerre_eval: negative degree");
  if (n == 0) return 1.0;
  double pm = 1.0;
  double p = 1.0 + alpha - xi;
  for (int m = 1; m < n; ++m) {
    const double next = ((2.0 * m + 1.0 + alpha - xi) * p - (m + alpha) * pm) / (m + 1.0);
    pm = p;
    p = next;
  }
  return p;
}

double family_eval(const OrthogonalFamily& family, int n, double xi) {
  switch (family.kind) {
    case OrthogonalFamily::Kind::HermiteNormalized:
      return hermite_eval(n, xi);
    case OrthogonalFamily::Kind::Jacobi:
      return jacobi_eval(n, family.alpha, family.beta, xi);
    case OrthogonalFamily::Kind::Laguerre:
      return laguerre_eval(n, family.alpha, xi);
  }
  throw std::logic_error("family_eval: unknown family");
}

double family_weight(const OrthogonalFamily& family, double xi) {
  switch (family.kind) {
    case OrthogonalFamily::Kind::HermiteNormalized:
      return gauss_density(xi);
    case OrthogonalFamily::Kind::Jacobi:
      if (xi <= -1.0 || xi >= 1.0) return 0.0;
      return std::pow(1.0 - xi, family.alpha) * std::pow(1.0 + xi, family.beta);
    case OrthogonalFamily::Kind::Laguerre:
      if (xi <= 0.0) return 0.0;
      return std::pow(xi, family.alpha) * std::exp(-xi);
  }
  throw std::logic_error("family_weight: unknown family");
}

double family_norm2(const OrthogonalFamily& family, int n) {
  switch (family.kind) {
    case OrthogonalFamily::Kind::HermiteNormalized:
      return 1.0;
    case OrthogonalFamily::Kind::Jacobi: {
      const double a = family.alpha, b = family.beta;
      const double lg = (a + b + 1.0) * std::log(2.0) - std::log(2.0 * n + a + b + 1.0) +
                        std::lgamma(n + a + 1.0) + std::lgamma(n + b + 1.0) -
                        std::lgamma(n + a + b + 1.0) - std::lgamma(n + 1.0);
      return std::exp(lg);
    }
    case OrthogonalFamily::Kind::Laguerre:
      return std::exp(std::lgamma(n + family.alpha + 1.0) - std::lgamma(n + 1.0));
  }
  throw std::logic_error("family_norm2: unknown family");
}

}  // namespace pcb
