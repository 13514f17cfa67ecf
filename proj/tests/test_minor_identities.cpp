#include <doctest.h>

#include "meanproj/minor_identities.hpp"
#include "meanproj/rng.hpp"

using namespace meanproj;

namespace {

RationalMatrix random_int(RngStream& rng, int rows, int cols) {
  std::vector<long> entries(static_cast<size_t>(rows) * cols);
  for (auto& e : entries) e = static_cast<long>(rng.next_below(19)) - 9;
  return RationalMatrix::from_int_grid(rows, cols, entries);
}

RationalMatrix random_invertible(RngStream& rng, int n) {
  RationalMatrix m = random_int(rng, n, n);
  while (determinant(m) == 0) m = random_int(rng, n, n);
  return m;
}

}  // namespace

TEST_CASE("cramer_minor with M = identity reduces to a minor of F") {
  RngStream rng(31, 0);
  const RationalMatrix f = random_int(rng, 4, 2);
  const IndexSet i({2, 4}, 4);
  const IdentityReport report = cramer_minor(RationalMatrix::identity(4), f, i);
  CHECK(report.holds);
  CHECK(report.left == determinant(submatrix_rows(f, i)));
}

TEST_CASE("cramer_minor scalar case is classical Cramer's rule") {
  RationalMatrix m(1, 1, {Rational(5)});
  RationalMatrix f(1, 1, {Rational(10)});
  const IdentityReport report = cramer_minor(m, f, IndexSet({1}, 1));
  CHECK(report.holds);
  CHECK(report.left == Rational(2));
  CHECK(report.right == Rational(2));
}

TEST_CASE("cramer_minor holds exactly on random integer instances") {
  RngStream rng(32, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const RationalMatrix m = random_invertible(rng, 4);
    const RationalMatrix f = random_int(rng, 4, 2);
    CHECK(cramer_minor(m, f, IndexSet({2, 4}, 4)).holds);
  }
}

TEST_CASE("cramer_minor with I = [n] degenerates to det F / det M") {
  RngStream rng(33, 0);
  const RationalMatrix m = random_invertible(rng, 3);
  const RationalMatrix f = random_int(rng, 3, 3);
  const IdentityReport report = cramer_minor(m, f, IndexSet::full(3));
  CHECK(report.holds);
  CHECK(report.left == determinant(f) / determinant(m));
}

TEST_CASE("cramer_minor rejects singular M") {
  RationalMatrix m(2, 2, {Rational(1), Rational(2), Rational(2), Rational(4)});
  RationalMatrix f(2, 1, {Rational(1), Rational(1)});
  CHECK_THROWS_AS(cramer_minor(m, f, IndexSet({1}, 2)), singularity_error);
}

TEST_CASE("jacobi_complementary on the identity") {
  const IdentityReport report = jacobi_complementary(
      RationalMatrix::identity(4), IndexSet({1, 3}, 4), IndexSet({1, 3}, 4));
  CHECK(report.holds);
  CHECK(report.left == Rational(1));
}

TEST_CASE("jacobi_complementary 2x2 single entry is the adjugate formula") {
  RationalMatrix m(2, 2, {Rational(3), Rational(7), Rational(2), Rational(5)});
  const IdentityReport report =
      jacobi_complementary(m, IndexSet({1}, 2), IndexSet({1}, 2));
  CHECK(report.holds);
  // (M^-1)_{11} = d / det M
  CHECK(report.left == Rational(5) / determinant(m));
}

TEST_CASE("jacobi_complementary holds with I distinct from J") {
  RngStream rng(34, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const RationalMatrix m = random_invertible(rng, 5);
    CHECK(jacobi_complementary(m, IndexSet({1, 4}, 5), IndexSet({2, 5}, 5))
              .holds);
  }
}

TEST_CASE("cauchy_binet with identity factors is a Kronecker delta") {
  const RationalMatrix id = RationalMatrix::identity(4);
  CHECK(cauchy_binet(id, id, IndexSet({1, 3}, 4), IndexSet({1, 3}, 4)).left ==
        Rational(1));
  CHECK(cauchy_binet(id, id, IndexSet({1, 3}, 4), IndexSet({2, 4}, 4)).left ==
        Rational(0));
  CHECK(cauchy_binet(id, id, IndexSet({1, 3}, 4), IndexSet({2, 4}, 4)).holds);
}

TEST_CASE("cauchy_binet at full order is determinant multiplicativity") {
  RngStream rng(35, 0);
  const RationalMatrix b = random_int(rng, 3, 3);
  const RationalMatrix c = random_int(rng, 3, 3);
  const IdentityReport report =
      cauchy_binet(b, c, IndexSet::full(3), IndexSet::full(3));
  CHECK(report.holds);
  CHECK(report.left == determinant(b) * determinant(c));
}

TEST_CASE("cauchy_binet holds on rectangular factors") {
  RngStream rng(36, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const RationalMatrix b = random_int(rng, 3, 5);
    const RationalMatrix c = random_int(rng, 5, 4);
    CHECK(cauchy_binet(b, c, IndexSet({1, 3}, 3), IndexSet({2, 4}, 4)).holds);
  }
}

TEST_CASE("laplace_multicolumn with |I| = 1 is the cofactor expansion") {
  RngStream rng(37, 0);
  const RationalMatrix m = random_int(rng, 4, 4);
  CHECK(laplace_multicolumn(m, IndexSet({2}, 4)).holds);
}

TEST_CASE("laplace_multicolumn with I = [n] uses the empty-minor convention") {
  RngStream rng(38, 0);
  const RationalMatrix m = random_int(rng, 3, 3);
  const IdentityReport report = laplace_multicolumn(m, IndexSet::full(3));
  CHECK(report.holds);
  CHECK(report.left == determinant(m));
}

TEST_CASE("laplace_multicolumn holds on random 5x5 instances") {
  RngStream rng(39, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const RationalMatrix m = random_int(rng, 5, 5);
    CHECK(laplace_multicolumn(m, IndexSet({1, 4}, 5)).holds);
  }
}

TEST_CASE("fuzz_identities produces 4 passing reports per trial") {
  FuzzOptions options;
  options.seed = 1;
  options.trials = 1;
  options.max_n = 2;
  const auto reports = fuzz_identities(options);
  CHECK(reports.size() == 4);
  for (const auto& report : reports) CHECK(report.holds);
}

TEST_CASE("fuzz_identities with zero trials is empty") {
  FuzzOptions options;
  options.trials = 0;
  CHECK(fuzz_identities(options).empty());
}

TEST_CASE("fuzz_identities is deterministic and thread-count independent") {
  FuzzOptions options;
  options.seed = 99;
  options.trials = 40;
  options.max_n = 5;
  options.parallel = true;
  const auto parallel = fuzz_identities(options);
  options.parallel = false;
  const auto serial = fuzz_identities(options);
  REQUIRE(parallel.size() == serial.size());
  for (size_t i = 0; i < parallel.size(); ++i) {
    CHECK(parallel[i].identity == serial[i].identity);
    CHECK(parallel[i].left == serial[i].left);
    CHECK(parallel[i].right == serial[i].right);
  }
}
