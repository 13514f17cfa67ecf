#include "meanproj/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace meanproj {

Matrix::Matrix(int rows, int cols)
    : rows_(rows), cols_(cols),
      entries_(static_cast<size_t>(rows) * static_cast<size_t>(cols), 0.0) {
  if (rows < 1 || cols < 1) throw dimension_error("Matrix: empty dimensions");
}

Matrix::Matrix(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows < 1 || cols < 1) throw dimension_error("Matrix: empty dimensions");
  if (entries_.size() != static_cast<size_t>(rows) * static_cast<size_t>(cols))
    throw dimension_error("Matrix: entry count mismatch");
  if (!all_finite()) throw dimension_error("Matrix: non-finite entry");
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double Matrix::max_norm() const {
  double norm = 0.0;
  for (double e : entries_) norm = std::max(norm, std::fabs(e));
  return norm;
}

bool Matrix::all_finite() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](double e) { return std::isfinite(e); });
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw dimension_error("Matrix multiply: mismatch");
  Matrix out(rows_, other.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      for (int j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  return out;
}

Matrix Matrix::operator-(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw dimension_error("Matrix subtract: mismatch");
  Matrix out(rows_, cols_);
  for (size_t k = 0; k < entries_.size(); ++k)
    out.entries_[k] = entries_[k] - other.entries_[k];
  return out;
}

namespace {

// LU with partial pivoting, in place. Returns the permutation sign, or 0 if
// a pivot fell below threshold * scale (threshold < 0 disables the check and
// simply records an exact zero pivot as singular).
int lu_factor(Matrix& a, std::vector<int>& perm, double threshold) {
  const int n = a.rows();
  perm.resize(static_cast<size_t>(n));
  int sign = 1;
  const double scale = a.max_norm();
  for (int col = 0; col < n; ++col) {
    int pivot_row = col;
    double pivot = std::fabs(a(col, col));
    for (int r = col + 1; r < n; ++r) {
      const double candidate = std::fabs(a(r, col));
      if (candidate > pivot) {
        pivot = candidate;
        pivot_row = r;
      }
    }
    perm[static_cast<size_t>(col)] = pivot_row;
    if (pivot_row != col) {
      for (int j = 0; j < n; ++j)
        std::swap(a(col, j), a(pivot_row, j));
      sign = -sign;
    }
    if (threshold >= 0.0 && pivot < threshold * scale)
      throw singularity_error("solve: pivot below singularity threshold",
                              pivot);
    if (pivot == 0.0) return 0;
    for (int r = col + 1; r < n; ++r) {
      const double factor = a(r, col) / a(col, col);
      a(r, col) = factor;
      for (int j = col + 1; j < n; ++j) a(r, j) -= factor * a(col, j);
    }
  }
  return sign;
}

}  // namespace

double determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw dimension_error("determinant: not square");
  Matrix lu = m;
  std::vector<int> perm;
  const int sign = lu_factor(lu, perm, -1.0);
  if (sign == 0) return 0.0;
  double det = sign;
  for (int i = 0; i < m.rows(); ++i) det *= lu(i, i);
  return det;
}

Matrix solve(const Matrix& m, const Matrix& f) {
  if (m.rows() != m.cols()) throw dimension_error("solve: M not square");
  if (f.rows() != m.rows()) throw dimension_error("solve: rhs row mismatch");
  const int n = m.rows();
  Matrix lu = m;
  std::vector<int> perm;
  lu_factor(lu, perm, kSingularityThreshold);
  Matrix x = f;
  // apply the full row permutation first: the stored multipliers refer to the
  // fully pivoted row order, not to the order at elimination time
  for (int col = 0; col < n; ++col) {
    const int p = perm[static_cast<size_t>(col)];
    if (p != col)
      for (int j = 0; j < x.cols(); ++j) std::swap(x(col, j), x(p, j));
  }
  for (int col = 0; col < n; ++col) {
    for (int r = col + 1; r < n; ++r) {
      const double factor = lu(r, col);
      for (int j = 0; j < x.cols(); ++j) x(r, j) -= factor * x(col, j);
    }
  }
  for (int row = n - 1; row >= 0; --row) {
    for (int j = 0; j < x.cols(); ++j) {
      double v = x(row, j);
      for (int k = row + 1; k < n; ++k) v -= lu(row, k) * x(k, j);
      x(row, j) = v / lu(row, row);
    }
  }
  return x;
}

Matrix submatrix(const Matrix& m, const IndexSet& rows, const IndexSet& cols) {
  if (rows.universe() != m.rows() || cols.universe() != m.cols())
    throw dimension_error("submatrix: index universe mismatch");
  Matrix out(rows.size(), cols.size());
  for (int i = 0; i < rows.size(); ++i)
    for (int j = 0; j < cols.size(); ++j)
      out(i, j) = m(rows[i] - 1, cols[j] - 1);
  return out;
}

Matrix submatrix_rows(const Matrix& m, const IndexSet& rows) {
  return submatrix(m, rows, IndexSet::full(m.cols()));
}

Matrix replace_columns(const Matrix& m, const IndexSet& cols,
                       const Matrix& f) {
  if (m.rows() != m.cols()) throw dimension_error("replace_columns: M not square");
  if (f.rows() != m.rows() || f.cols() != cols.size())
    throw dimension_error("replace_columns: F shape mismatch");
  if (cols.universe() != m.cols())
    throw dimension_error("replace_columns: index universe mismatch");
  Matrix out = m;
  for (int k = 0; k < cols.size(); ++k)
    for (int i = 0; i < m.rows(); ++i) out(i, cols[k] - 1) = f(i, k);
  return out;
}

}  // namespace meanproj
