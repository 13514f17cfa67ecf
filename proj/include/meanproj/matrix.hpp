#pragma once

#include <cstddef>
#include <vector>

#include "meanproj/errors.hpp"
#include "meanproj/index_set.hpp"

namespace meanproj {

// Relative pivot threshold below which a solve/determinant path reports a
// singular system instead of returning garbage. Interpolation matrices are
// invertible only almost surely, so near-degenerate draws must surface.
inline constexpr double kSingularityThreshold = 1e-12;

// Dense row-major matrix of 64-bit reals. Immutable by convention after
// construction; all operations below are pure.
class Matrix {
 public:
  Matrix(int rows, int cols);
  Matrix(int rows, int cols, std::vector<double> entries);

  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double operator()(int i, int j) const {
    return entries_[static_cast<size_t>(i) * cols_ + j];
  }
  double& operator()(int i, int j) {
    return entries_[static_cast<size_t>(i) * cols_ + j];
  }
  const std::vector<double>& entries() const { return entries_; }

  double max_norm() const;
  bool all_finite() const;

  Matrix transpose() const;
  Matrix operator*(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;

 private:
  int rows_;
  int cols_;
  std::vector<double> entries_;
};

// det M by LU with partial pivoting. Throws dimension_error if not square.
double determinant(const Matrix& m);

// Solves M A = F for square M. Throws singularity_error when a pivot falls
// below kSingularityThreshold * max_norm(M).
Matrix solve(const Matrix& m, const Matrix& f);

// M^I_J: rows I, columns J, in increasing index order (1-based sets).
Matrix submatrix(const Matrix& m, const IndexSet& rows, const IndexSet& cols);

// M with all columns kept: M^I.
Matrix submatrix_rows(const Matrix& m, const IndexSet& rows);

// M_[I <- F]: replace columns indexed by I (I = {i_1 < ... < i_m}) with the
// columns of F, so column i_k of the result is column k of F.
Matrix replace_columns(const Matrix& m, const IndexSet& cols, const Matrix& f);

}  // namespace meanproj
