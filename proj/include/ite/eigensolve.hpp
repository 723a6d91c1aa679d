#pragma once

// Dense symmetric-definite generalized eigensolver A v = mu B v.
//
// B = L L^T (Cholesky), C = L^{-1} A L^{-T}, Householder reduction of C to
// tridiagonal form, then implicit-shift QL.  The full spectrum is computed and
// truncated; no randomness anywhere.

#include <vector>

#include "ite/matrix.hpp"

namespace ite {

// Lower-triangular L with B = L L^T.  Throws NotPositiveDefinite when a pivot
// drops to 1e-13 of the largest diagonal entry or below.
Matrix cholesky(const Matrix& b);

struct SpectrumSlice {
  std::vector<double> eigenvalues;  // ascending
  int dimension = 0;
};

SpectrumSlice lowest_k(const Matrix& a, const Matrix& b, int k);

// Eigenvalues of a symmetric matrix, ascending.
std::vector<double> symmetric_eigenvalues(Matrix a);

namespace detail {

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> offdiag;  // offdiag[i] couples i-1 and i; offdiag[0] = 0
};

// Householder reduction in place.  With accumulate set, `a` is overwritten by
// the orthogonal transform Q such that Q^T A Q is tridiagonal.
Tridiagonal householder_tridiagonalize(Matrix& a, bool accumulate);

// Implicit-shift QL on the tridiagonal form.  Eigenvalues are left in
// t.diag (unsorted); if z is non-null its columns are rotated along.
void ql_implicit(Tridiagonal& t, Matrix* z);

struct Eigenpairs {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column j belongs to values[j]
};

// Full generalized eigendecomposition; only used to check residuals.
Eigenpairs generalized_eigenpairs(const Matrix& a, const Matrix& b);

}  // namespace detail

}  // namespace ite
