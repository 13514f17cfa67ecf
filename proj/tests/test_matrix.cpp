#include <doctest.h>

#include <cmath>

#include "meanproj/matrix.hpp"
#include "meanproj/rational_matrix.hpp"
#include "meanproj/rng.hpp"

using namespace meanproj;

namespace {

Matrix random_matrix(RngStream& rng, int rows, int cols, double lo, double hi) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m(i, j) = lo + (hi - lo) * rng.next_double();
  return m;
}

RationalMatrix random_int_rational(RngStream& rng, int rows, int cols) {
  std::vector<long> entries(static_cast<size_t>(rows) * cols);
  for (auto& e : entries) e = static_cast<long>(rng.next_below(19)) - 9;
  return RationalMatrix::from_int_grid(rows, cols, entries);
}

}  // namespace

TEST_CASE("determinant of the identity is 1") {
  CHECK(determinant(Matrix::identity(4)) == doctest::Approx(1.0));
}

TEST_CASE("2x2 determinant matches the cofactor formula") {
  Matrix m(2, 2, {1, 2, 3, 4});
  CHECK(determinant(m) == doctest::Approx(-2.0));
}

TEST_CASE("determinant matches the exact cofactor oracle on integer 5x5") {
  RngStream rng(11, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const RationalMatrix exact = random_int_rational(rng, 5, 5);
    const double oracle = determinant_cofactor(exact).get_d();
    const double value = determinant(exact.to_double());
    const double scale = std::max(1.0, std::fabs(oracle));
    CHECK(std::fabs(value - oracle) <= 1e-12 * scale);
  }
}

TEST_CASE("determinant is alternating under row swaps") {
  RngStream rng(12, 0);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix m = random_matrix(rng, 4, 4, -1.0, 1.0);
    Matrix swapped = m;
    for (int j = 0; j < 4; ++j) std::swap(swapped(0, j), swapped(2, j));
    const double d = determinant(m);
    CHECK(determinant(swapped) ==
          doctest::Approx(-d).epsilon(1e-12).scale(std::fabs(d) + 1.0));
  }
}

TEST_CASE("rational determinant is exactly multiplicative") {
  RngStream rng(13, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const RationalMatrix a = random_int_rational(rng, 4, 4);
    const RationalMatrix b = random_int_rational(rng, 4, 4);
    CHECK(determinant(a * b) == determinant(a) * determinant(b));
  }
}

TEST_CASE("rational determinant matches cofactor expansion exactly") {
  RngStream rng(14, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const RationalMatrix m = random_int_rational(rng, 5, 5);
    CHECK(determinant(m) == determinant_cofactor(m));
  }
}

TEST_CASE("solve with identity returns the right-hand side") {
  RngStream rng(15, 0);
  const Matrix f = random_matrix(rng, 4, 2, -2.0, 2.0);
  const Matrix a = solve(Matrix::identity(4), f);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 2; ++j) CHECK(a(i, j) == doctest::Approx(f(i, j)));
}

TEST_CASE("diagonal solve") {
  Matrix m(2, 2, {2, 0, 0, 4});
  Matrix f(2, 1, {2, 8});
  const Matrix a = solve(m, f);
  CHECK(a(0, 0) == doctest::Approx(1.0));
  CHECK(a(1, 0) == doctest::Approx(2.0));
}

TEST_CASE("solve matches the exact rational elimination oracle") {
  RngStream rng(16, 0);
  for (int trial = 0; trial < 20; ++trial) {
    RationalMatrix m = random_int_rational(rng, 4, 4);
    while (determinant(m) == 0) m = random_int_rational(rng, 4, 4);
    const RationalMatrix f = random_int_rational(rng, 4, 3);
    const RationalMatrix exact = solve(m, f);
    const Matrix approx = solve(m.to_double(), f.to_double());
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 3; ++j) {
        const double target = exact(i, j).get_d();
        CHECK(std::fabs(approx(i, j) - target) <=
              1e-12 * std::max(1.0, std::fabs(target)));
      }
  }
}

TEST_CASE("solve residual stays small for well-conditioned systems") {
  RngStream rng(17, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = random_matrix(rng, 5, 5, -1.0, 1.0);
    const Matrix f = random_matrix(rng, 5, 2, -1.0, 1.0);
    Matrix a(1, 1);
    try {
      a = solve(m, f);
    } catch (const singularity_error&) {
      continue;
    }
    CHECK((m * a - f).max_norm() <= 1e-10 * std::max(1.0, f.max_norm()) *
                                        std::max(1.0, m.max_norm() * 1e2));
  }
}

TEST_CASE("solve rejects near-singular systems with the offending pivot") {
  Matrix m(2, 2, {1.0, 1.0, 1.0, 1.0 + 1e-15});
  Matrix f(2, 1, {1.0, 1.0});
  CHECK_THROWS_AS(solve(m, f), singularity_error);
}

TEST_CASE("solve rejects non-square systems") {
  Matrix f(2, 1, {1.0, 1.0});
  CHECK_THROWS_AS(solve(Matrix(2, 3), f), dimension_error);
  CHECK_THROWS_AS(determinant(Matrix(2, 3)), dimension_error);
}

TEST_CASE("submatrix of the full range is the matrix itself") {
  RngStream rng(18, 0);
  const Matrix m = random_matrix(rng, 3, 3, -1.0, 1.0);
  const Matrix s = submatrix(m, IndexSet::full(3), IndexSet::full(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(s(i, j) == m(i, j));
}

TEST_CASE("submatrix reads off the selected entries") {
  Matrix m(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9});
  const Matrix s = submatrix(m, IndexSet({1, 3}, 3), IndexSet({2}, 3));
  CHECK(s.rows() == 2);
  CHECK(s.cols() == 1);
  CHECK(s(0, 0) == 2);
  CHECK(s(1, 0) == 8);
}

TEST_CASE("submatrix matches an entrywise index loop") {
  RngStream rng(19, 0);
  const Matrix m = random_matrix(rng, 5, 5, -1.0, 1.0);
  const IndexSet rows({2, 5}, 5);
  const IndexSet cols({1, 4}, 5);
  const Matrix s = submatrix(m, rows, cols);
  for (int i = 0; i < rows.size(); ++i)
    for (int j = 0; j < cols.size(); ++j)
      CHECK(s(i, j) == m(rows[i] - 1, cols[j] - 1));
}

TEST_CASE("replace_columns with the full index set returns F") {
  RngStream rng(20, 0);
  const Matrix m = random_matrix(rng, 3, 3, -1.0, 1.0);
  const Matrix f = random_matrix(rng, 3, 3, -1.0, 1.0);
  const Matrix r = replace_columns(m, IndexSet::full(3), f);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(r(i, j) == f(i, j));
}

TEST_CASE("replace_columns places a single column") {
  Matrix f(3, 1, {7, 8, 9});
  const Matrix r = replace_columns(Matrix::identity(3), IndexSet({2}, 3), f);
  CHECK(r(0, 1) == 7);
  CHECK(r(1, 1) == 8);
  CHECK(r(2, 1) == 9);
  CHECK(r(0, 0) == 1);
  CHECK(r(2, 2) == 1);
}

TEST_CASE("replace_columns follows the increasing-index convention") {
  RngStream rng(21, 0);
  const Matrix m = random_matrix(rng, 4, 4, -1.0, 1.0);
  const Matrix f = random_matrix(rng, 4, 2, -1.0, 1.0);
  const IndexSet cols({1, 3}, 4);
  const Matrix r = replace_columns(m, cols, f);
  for (int i = 0; i < 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      if (j == 1)
        CHECK(r(i, j - 1) == f(i, 0));
      else if (j == 3)
        CHECK(r(i, j - 1) == f(i, 1));
      else
        CHECK(r(i, j - 1) == m(i, j - 1));
    }
}

TEST_CASE("replace_columns with the original columns is the identity map") {
  RngStream rng(22, 0);
  const Matrix m = random_matrix(rng, 4, 4, -1.0, 1.0);
  const IndexSet cols({2, 4}, 4);
  const Matrix own = submatrix(m, IndexSet::full(4), cols);
  const Matrix r = replace_columns(m, cols, own);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(r(i, j) == m(i, j));
}

TEST_CASE("replace_columns validates the column count") {
  CHECK_THROWS_AS(
      replace_columns(Matrix::identity(3), IndexSet({1, 2}, 3), Matrix(3, 1)),
      dimension_error);
}

TEST_CASE("index sets validate their invariants") {
  CHECK_THROWS_AS(IndexSet({2, 1}, 3), dimension_error);
  CHECK_THROWS_AS(IndexSet({1, 4}, 3), dimension_error);
  CHECK_THROWS_AS(IndexSet({0}, 3), dimension_error);
  CHECK(IndexSet({1, 3}, 4).complement() == IndexSet({2, 4}, 4));
  CHECK(all_subsets(5, 2).size() == 10);
  CHECK(binomial(6, 3) == 20);
}
