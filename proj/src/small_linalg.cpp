#include "pcb/small_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pcb {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix product: shape mismatch");
  Matrix z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const double xik = x(i, k);
      if (xik == 0.0) continue;
      for (int j = 0; j < y.cols; ++j) z(i, j) += xik * y(k, j);
    }
  return z;
}

Matrix operator+(const Matrix& x, const Matrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix sum: shape mismatch");
  Matrix z = x;
  for (size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
  return z;
}

Matrix operator-(const Matrix& x, const Matrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix diff: shape mismatch");
  Matrix z = x;
  for (size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
  return z;
}

void matvec(const Matrix& m, std::span<const double> x, std::span<double> y) {
  if (static_cast<int>(x.size()) != m.cols || static_cast<int>(y.size()) != m.rows)
    throw std::invalid_argument("matvec: shape mismatch");
  for (int i = 0; i < m.rows; ++i) {
    double s = 0.0;
    const double* row = &m.a[static_cast<size_t>(i) * m.cols];
    for (int j = 0; j < m.cols; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

double max_abs(const Matrix& m) {
  double v = 0.0;
  for (double x : m.a) v = std::max(v, std::abs(x));
  return v;
}

double frobenius_norm(const Matrix& m) {
  double s = 0.0;
  for (double x : m.a) s += x * x;
  return std::sqrt(s);
}

namespace {

double off_diagonal_norm(const double* a, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) s += a[i * n + j] * a[i * n + j];
  return std::sqrt(s);
}

// One cyclic Jacobi pass over all (p,q), p<q. Rotations applied two-sided;
// if v != nullptr the rotations accumulate into it (row-major, n x n).
void jacobi_sweep(double* a, int n, double* v) {
  for (int p = 0; p < n - 1; ++p) {
    for (int q = p + 1; q < n; ++q) {
      const double apq = a[p * n + q];
      if (apq == 0.0) continue;
      const double app = a[p * n + p];
      const double aqq = a[q * n + q];
      const double tau = (aqq - app) / (2.0 * apq);
      const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
      const double c = 1.0 / std::sqrt(1.0 + t * t);
      const double s = t * c;
      for (int k = 0; k < n; ++k) {
        const double akp = a[k * n + p];
        const double akq = a[k * n + q];
        a[k * n + p] = c * akp - s * akq;
        a[k * n + q] = s * akp + c * akq;
      }
      for (int k = 0; k < n; ++k) {
        const double apk = a[p * n + k];
        const double aqk = a[q * n + k];
        a[p * n + k] = c * apk - s * aqk;
        a[q * n + k] = s * apk + c * aqk;
      }
      if (v != nullptr) {
        for (int k = 0; k < n; ++k) {
          const double vkp = v[k * n + p];
          const double vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }
}

void jacobi_diagonalize(double* a, int n, double* v) {
  double fnorm = 0.0;
  for (int i = 0; i < n * n; ++i) fnorm += a[i] * a[i];
  fnorm = std::sqrt(fnorm);
  const double tol = 1e-13 * fnorm;
  for (int sweep = 0; sweep < 64; ++sweep) {
    if (off_diagonal_norm(a, n) <= tol) break;
    jacobi_sweep(a, n, v);
  }
}

}  // namespace

void symmetric_eigenvalues_inplace(double* a, int n, double* eig) {
  if (n == 1) {
    eig[0] = a[0];
    return;
  }
  jacobi_diagonalize(a, n, nullptr);
  for (int i = 0; i < n; ++i) eig[i] = a[i * n + i];
  std::sort(eig, eig + n);
}

std::vector<double> symmetric_eigenvalues(const Matrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("symmetric_eigenvalues: square matrix required");
  const int n = m.rows;
  std::vector<double> eig(n);
  if (n <= 16) {
    double buf[16 * 16];
    std::copy(m.a.begin(), m.a.end(), buf);
    symmetric_eigenvalues_inplace(buf, n, eig.data());
  } else {
    std::vector<double> buf = m.a;
    symmetric_eigenvalues_inplace(buf.data(), n, eig.data());
  }
  return eig;
}

void symmetric_eigensystem(const Matrix& m, std::vector<double>& eig, Matrix& vectors) {
  if (m.rows != m.cols) throw std::invalid_argument("symmetric_eigensystem: square matrix required");
  const int n = m.rows;
  std::vector<double> a = m.a;
  vectors = Matrix::identity(n);
  jacobi_diagonalize(a.data(), n, vectors.a.data());
  // sort ascending, permuting columns of V alongside
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a[i * n + i] < a[j * n + j]; });
  eig.resize(n);
  Matrix sorted(n, n);
  for (int j = 0; j < n; ++j) {
    eig[j] = a[order[j] * n + order[j]];
    for (int i = 0; i < n; ++i) sorted(i, j) = vectors(i, order[j]);
  }
  vectors = std::move(sorted);
}

}  // namespace pcb
