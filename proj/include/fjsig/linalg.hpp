#pragma once

#include <initializer_list>
#include <vector>

namespace fjsig {

/// Dense real matrix, row-major. Values are immutable by convention once built;
/// all operations below are pure functions.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0.0) {}
  Matrix(std::initializer_list<std::initializer_list<double>> m);

  double& operator()(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
  double operator()(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }

  std::vector<double> row(int r) const;
  std::vector<double> col(int c) const;

  static Matrix identity(int n);
};

Matrix multiply(const Matrix& a, const Matrix& b);
std::vector<double> multiply(const Matrix& a, const std::vector<double>& x);
Matrix transpose(const Matrix& m);
Matrix subtract(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& m, double s);
double inf_norm(const Matrix& m);
double inf_norm_diff(const Matrix& a, const Matrix& b);
bool all_finite(const Matrix& m);

/// Inverse by Gauss-Jordan elimination with partial pivoting.
/// Throws SingularMatrixError when a pivot magnitude falls below 1e-12.
Matrix invert(const Matrix& m);

/// Rank factorization m = basis * coefficients with d = numerical rank.
/// basis holds the pivot columns of m, coefficients the nonzero rows of the
/// reduced row echelon form.
struct RankFactorization {
  int d = 0;
  Matrix basis;         // n x d
  Matrix coefficients;  // d x m
};

/// Numerical rank via row reduction; pivots below tol relative to the largest
/// entry are treated as zero. Rank 0 is allowed for the zero matrix.
RankFactorization rank_factorize(const Matrix& m, double tol = 1e-9);

/// Estimate of the spectral radius of a nonnegative square matrix via 200
/// power iterations from an all-ones start vector. Used for instance validation.
double spectral_radius_bound(const Matrix& m);

}  // namespace fjsig
