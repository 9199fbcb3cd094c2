#include "fjsig/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "fjsig/errors.hpp"

namespace fjsig {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> m) {
  rows = static_cast<int>(m.size());
  cols = rows > 0 ? static_cast<int>(m.begin()->size()) : 0;
  data.reserve(static_cast<size_t>(rows) * cols);
  for (const auto& r : m) {
    for (double v : r) data.push_back(v);
  }
}

std::vector<double> Matrix::row(int r) const {
  return {data.begin() + static_cast<long>(r) * cols, data.begin() + static_cast<long>(r + 1) * cols};
}

std::vector<double> Matrix::col(int c) const {
  std::vector<double> out(rows);
  for (int i = 0; i < rows; ++i) out[i] = (*this)(i, c);
  return out;
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int k = 0; k < a.cols; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

std::vector<double> multiply(const Matrix& a, const std::vector<double>& x) {
  std::vector<double> out(a.rows, 0.0);
  for (int i = 0; i < a.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < a.cols; ++j) s += a(i, j) * x[j];
    out[i] = s;
  }
  return out;
}

Matrix transpose(const Matrix& m) {
  Matrix out(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out(j, i) = m(i, j);
  return out;
}

Matrix subtract(const Matrix& a, const Matrix& b) {
  Matrix out = a;
  for (size_t i = 0; i < out.data.size(); ++i) out.data[i] -= b.data[i];
  return out;
}

Matrix scale(const Matrix& m, double s) {
  Matrix out = m;
  for (double& v : out.data) v *= s;
  return out;
}

double inf_norm(const Matrix& m) {
  double best = 0.0;
  for (int i = 0; i < m.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < m.cols; ++j) s += std::abs(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

double inf_norm_diff(const Matrix& a, const Matrix& b) {
  double best = 0.0;
  for (size_t i = 0; i < a.data.size(); ++i) best = std::max(best, std::abs(a.data[i] - b.data[i]));
  return best;
}

bool all_finite(const Matrix& m) {
  for (double v : m.data)
    if (!std::isfinite(v)) return false;
  return true;
}

Matrix invert(const Matrix& m) {
  const int n = m.rows;
  Matrix a = m;
  Matrix inv = Matrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (std::abs(a(pivot, col)) < 1e-12) throw SingularMatrixError();
    if (pivot != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const double p = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

RankFactorization rank_factorize(const Matrix& m, double tol) {
  double scale = 0.0;
  for (double v : m.data) scale = std::max(scale, std::abs(v));
  RankFactorization out;
  if (scale == 0.0) {
    out.d = 0;
    out.basis = Matrix(m.rows, 0);
    out.coefficients = Matrix(0, m.cols);
    return out;
  }
  const double thresh = tol * scale;

  Matrix r = m;
  std::vector<int> pivot_cols;
  int lead = 0;
  for (int col = 0; col < m.cols && lead < m.rows; ++col) {
    int pivot = lead;
    for (int i = lead + 1; i < m.rows; ++i)
      if (std::abs(r(i, col)) > std::abs(r(pivot, col))) pivot = i;
    if (std::abs(r(pivot, col)) <= thresh) continue;
    if (pivot != lead)
      for (int j = 0; j < m.cols; ++j) std::swap(r(pivot, j), r(lead, j));
    const double p = r(lead, col);
    for (int j = 0; j < m.cols; ++j) r(lead, j) /= p;
    for (int i = 0; i < m.rows; ++i) {
      if (i == lead) continue;
      const double f = r(i, col);
      if (f == 0.0) continue;
      for (int j = 0; j < m.cols; ++j) r(i, j) -= f * r(lead, j);
    }
    pivot_cols.push_back(col);
    ++lead;
  }

  out.d = static_cast<int>(pivot_cols.size());
  out.basis = Matrix(m.rows, out.d);
  for (int j = 0; j < out.d; ++j)
    for (int i = 0; i < m.rows; ++i) out.basis(i, j) = m(i, pivot_cols[j]);
  out.coefficients = Matrix(out.d, m.cols);
  for (int i = 0; i < out.d; ++i)
    for (int j = 0; j < m.cols; ++j) out.coefficients(i, j) = r(i, j);
  return out;
}

double spectral_radius_bound(const Matrix& m) {
  const int n = m.rows;
  if (n == 0) return 0.0;
  std::vector<double> x(n, 1.0);
  double estimate = 0.0;
  for (int it = 0; it < 200; ++it) {
    std::vector<double> y = multiply(m, x);
    double nrm = 0.0;
    for (double v : y) nrm = std::max(nrm, std::abs(v));
    if (nrm < 1e-300) return 0.0;
    for (double& v : y) v /= nrm;
    x = std::move(y);
    estimate = nrm;
  }
  return estimate;
}

}  // namespace fjsig
