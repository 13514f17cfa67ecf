#pragma once

#include <gmpxx.h>

#include <vector>

#include "meanproj/errors.hpp"
#include "meanproj/index_set.hpp"
#include "meanproj/matrix.hpp"

namespace meanproj {

using Rational = mpq_class;

// Exact-rational dense matrix. Backs the identity checkers and the oracles;
// the floating Matrix is the production type.
class RationalMatrix {
 public:
  RationalMatrix(int rows, int cols);
  RationalMatrix(int rows, int cols, std::vector<Rational> entries);

  static RationalMatrix identity(int n);
  static RationalMatrix from_int_grid(int rows, int cols,
                                      const std::vector<long>& entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Rational& operator()(int i, int j) const {
    return entries_[static_cast<size_t>(i) * cols_ + j];
  }
  Rational& operator()(int i, int j) {
    return entries_[static_cast<size_t>(i) * cols_ + j];
  }

  RationalMatrix operator*(const RationalMatrix& other) const;
  Matrix to_double() const;

 private:
  int rows_;
  int cols_;
  std::vector<Rational> entries_;
};

// Exact determinant by fraction-free (Bareiss-style over rationals) elimination.
// det of a 0x0 matrix is 1, matching the empty-minor convention.
Rational determinant(const RationalMatrix& m);

// Exact determinant by recursive cofactor expansion; independent oracle path.
Rational determinant_cofactor(const RationalMatrix& m);

// Exact solve of M A = F. Throws singularity_error (pivot field 0) when
// det M = 0.
RationalMatrix solve(const RationalMatrix& m, const RationalMatrix& f);

RationalMatrix inverse(const RationalMatrix& m);

RationalMatrix submatrix(const RationalMatrix& m, const IndexSet& rows,
                         const IndexSet& cols);
RationalMatrix submatrix_rows(const RationalMatrix& m, const IndexSet& rows);
RationalMatrix replace_columns(const RationalMatrix& m, const IndexSet& cols,
                               const RationalMatrix& f);

}  // namespace meanproj
