#include "meanproj/rational_matrix.hpp"

#include <utility>

namespace meanproj {

RationalMatrix::RationalMatrix(int rows, int cols)
    : rows_(rows), cols_(cols),
      entries_(static_cast<size_t>(rows) * static_cast<size_t>(cols),
               Rational(0)) {
  if (rows < 1 || cols < 1)
    throw dimension_error("RationalMatrix: empty dimensions");
}

RationalMatrix::RationalMatrix(int rows, int cols,
                               std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows < 1 || cols < 1)
    throw dimension_error("RationalMatrix: empty dimensions");
  if (entries_.size() != static_cast<size_t>(rows) * static_cast<size_t>(cols))
    throw dimension_error("RationalMatrix: entry count mismatch");
  for (auto& e : entries_) e.canonicalize();
}

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_int_grid(int rows, int cols,
                                             const std::vector<long>& entries) {
  std::vector<Rational> out(entries.size());
  for (size_t k = 0; k < entries.size(); ++k) out[k] = Rational(entries[k]);
  return RationalMatrix(rows, cols, std::move(out));
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
  if (cols_ != other.rows_)
    throw dimension_error("RationalMatrix multiply: mismatch");
  RationalMatrix out(rows_, other.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  return out;
}

Matrix RationalMatrix::to_double() const {
  std::vector<double> out(entries_.size());
  for (size_t k = 0; k < entries_.size(); ++k) out[k] = entries_[k].get_d();
  return Matrix(rows_, cols_, std::move(out));
}

Rational determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols())
    throw dimension_error("determinant: not square");
  const int n = m.rows();
  if (n == 0) return Rational(1);
  RationalMatrix a = m;
  Rational det(1);
  for (int col = 0; col < n; ++col) {
    int pivot_row = -1;
    for (int r = col; r < n; ++r)
      if (a(r, col) != 0) {
        pivot_row = r;
        break;
      }
    if (pivot_row < 0) return Rational(0);
    if (pivot_row != col) {
      for (int j = col; j < n; ++j) std::swap(a(col, j), a(pivot_row, j));
      det = -det;
    }
    det *= a(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      const Rational factor = a(r, col) / a(col, col);
      for (int j = col; j < n; ++j) a(r, j) -= factor * a(col, j);
    }
  }
  return det;
}

Rational determinant_cofactor(const RationalMatrix& m) {
  if (m.rows() != m.cols())
    throw dimension_error("determinant: not square");
  const int n = m.rows();
  if (n == 1) return m(0, 0);
  Rational det(0);
  for (int j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    RationalMatrix minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    }
    const Rational term = m(0, j) * determinant_cofactor(minor);
    det += (j % 2 == 0) ? term : -term;
  }
  return det;
}

RationalMatrix solve(const RationalMatrix& m, const RationalMatrix& f) {
  if (m.rows() != m.cols()) throw dimension_error("solve: M not square");
  if (f.rows() != m.rows()) throw dimension_error("solve: rhs row mismatch");
  const int n = m.rows();
  RationalMatrix a = m;
  RationalMatrix x = f;
  for (int col = 0; col < n; ++col) {
    int pivot_row = -1;
    for (int r = col; r < n; ++r)
      if (a(r, col) != 0) {
        pivot_row = r;
        break;
      }
    if (pivot_row < 0)
      throw singularity_error("rational solve: singular matrix", 0.0);
    if (pivot_row != col) {
      for (int j = col; j < n; ++j) std::swap(a(col, j), a(pivot_row, j));
      for (int j = 0; j < x.cols(); ++j) std::swap(x(col, j), x(pivot_row, j));
    }
    for (int r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      const Rational factor = a(r, col) / a(col, col);
      for (int j = col; j < n; ++j) a(r, j) -= factor * a(col, j);
      for (int j = 0; j < x.cols(); ++j) x(r, j) -= factor * x(col, j);
    }
  }
  for (int row = n - 1; row >= 0; --row) {
    for (int j = 0; j < x.cols(); ++j) {
      Rational v = x(row, j);
      for (int k = row + 1; k < n; ++k) v -= a(row, k) * x(k, j);
      x(row, j) = v / a(row, row);
    }
  }
  return x;
}

RationalMatrix inverse(const RationalMatrix& m) {
  return solve(m, RationalMatrix::identity(m.rows()));
}

RationalMatrix submatrix(const RationalMatrix& m, const IndexSet& rows,
                         const IndexSet& cols) {
  if (rows.universe() != m.rows() || cols.universe() != m.cols())
    throw dimension_error("submatrix: index universe mismatch");
  if (rows.size() == 0 || cols.size() == 0)
    throw dimension_error("submatrix: empty selection");
  RationalMatrix out(rows.size(), cols.size());
  for (int i = 0; i < rows.size(); ++i)
    for (int j = 0; j < cols.size(); ++j)
      out(i, j) = m(rows[i] - 1, cols[j] - 1);
  return out;
}

RationalMatrix submatrix_rows(const RationalMatrix& m, const IndexSet& rows) {
  return submatrix(m, rows, IndexSet::full(m.cols()));
}

RationalMatrix replace_columns(const RationalMatrix& m, const IndexSet& cols,
                               const RationalMatrix& f) {
  if (m.rows() != m.cols())
    throw dimension_error("replace_columns: M not square");
  if (f.rows() != m.rows() || f.cols() != cols.size())
    throw dimension_error("replace_columns: F shape mismatch");
  if (cols.universe() != m.cols())
    throw dimension_error("replace_columns: index universe mismatch");
  RationalMatrix out = m;
  for (int k = 0; k < cols.size(); ++k)
    for (int i = 0; i < m.rows(); ++i) out(i, cols[k] - 1) = f(i, k);
  return out;
}

}  // namespace meanproj
