#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pcb {

/// Dense row-major matrix for the small operators used throughout
/// (system matrices, SBP operators, filters). Not meant for large n.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Matrix identity(int n);
  Matrix transposed() const;
};

Matrix operator*(const Matrix& x, const Matrix& y);
Matrix operator+(const Matrix& x, const Matrix& y);
Matrix operator-(const Matrix& x, const Matrix& y);

/// y = A x for a square or rectangular matrix.
void matvec(const Matrix& m, std::span<const double> x, std::span<double> y);

double max_abs(const Matrix& m);
double frobenius_norm(const Matrix& m);

/// Eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi rotations.
/// Sweeps until off(A) <= 1e-13 * ||A||_F. Input is copied.
std::vector<double> symmetric_eigenvalues(const Matrix& m);

/// Same, operating on a raw row-major buffer of size n*n (overwritten),
/// writing the n eigenvalues ascending into eig. Allocation-free for n <= 16.
void symmetric_eigenvalues_inplace(double* a, int n, double* eig);

/// Full spectral decomposition A = V diag(eig) V^T; columns of V are
/// eigenvectors. Used by quadrature-rule construction and tests.
void symmetric_eigensystem(const Matrix& m, std::vector<double>& eig, Matrix& vectors);

}  // namespace pcb
