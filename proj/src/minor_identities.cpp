#include "meanproj/minor_identities.hpp"

#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "meanproj/rng.hpp"

namespace meanproj {

namespace {

// Minor with the 0x0 convention det() = 1, for the boundary terms of the
// Laplace and Jacobi formulas.
Rational minor_or_one(const RationalMatrix& m, const IndexSet& rows,
                      const IndexSet& cols) {
  if (rows.size() != cols.size())
    throw dimension_error("minor: row/column counts differ");
  if (rows.size() == 0) return Rational(1);
  return determinant(submatrix(m, rows, cols));
}

int parity_sign(long exponent) { return (exponent % 2 == 0) ? 1 : -1; }

std::string describe(const char* shape, const IndexSet* i,
                     const IndexSet* j) {
  std::ostringstream os;
  os << shape;
  if (i) os << " I=" << i->to_string();
  if (j) os << " J=" << j->to_string();
  return os.str();
}

IdentityReport make_report(std::string name, std::string instance,
                           Rational left, Rational right) {
  const bool holds = (left == right);
  return IdentityReport{std::move(name), std::move(instance), std::move(left),
                        std::move(right), holds};
}

}  // namespace

IdentityReport cramer_minor(const RationalMatrix& m, const RationalMatrix& f,
                            const IndexSet& rows) {
  const int n = m.rows();
  if (m.cols() != n) throw dimension_error("cramer_minor: M not square");
  if (f.rows() != n) throw dimension_error("cramer_minor: F row mismatch");
  if (rows.size() != f.cols() || rows.universe() != n)
    throw dimension_error("cramer_minor: |I| must equal cols(F)");
  const Rational det_m = determinant(m);
  if (det_m == 0)
    throw singularity_error("cramer_minor: det M = 0", 0.0);

  const RationalMatrix a = solve(m, f);
  const Rational left = determinant(submatrix_rows(a, rows));
  const Rational right = determinant(replace_columns(m, rows, f)) / det_m;

  std::ostringstream inst;
  inst << "n=" << n << " m=" << f.cols() << " I=" << rows.to_string();
  return make_report("cramer_minor", inst.str(), left, right);
}

IdentityReport jacobi_complementary(const RationalMatrix& m, const IndexSet& i,
                                    const IndexSet& j) {
  const int n = m.rows();
  if (m.cols() != n)
    throw dimension_error("jacobi_complementary: M not square");
  if (i.size() != j.size() || i.universe() != n || j.universe() != n)
    throw dimension_error("jacobi_complementary: |I| must equal |J|");
  const Rational det_m = determinant(m);
  if (det_m == 0)
    throw singularity_error("jacobi_complementary: det M = 0", 0.0);

  const RationalMatrix m_inv = inverse(m);
  const Rational left = minor_or_one(m_inv, i, j);
  const Rational right = parity_sign(i.index_sum() + j.index_sum()) *
                         minor_or_one(m, j.complement(), i.complement()) /
                         det_m;

  std::ostringstream inst;
  inst << "n=" << n << " " << describe("", &i, &j);
  return make_report("jacobi_complementary", inst.str(), left, right);
}

IdentityReport cauchy_binet(const RationalMatrix& b, const RationalMatrix& c,
                            const IndexSet& i, const IndexSet& j) {
  if (b.cols() != c.rows()) throw dimension_error("cauchy_binet: inner mismatch");
  const int inner_n = b.cols();
  const int m = i.size();
  if (j.size() != m) throw dimension_error("cauchy_binet: |I| must equal |J|");
  if (i.universe() != b.rows() || j.universe() != c.cols())
    throw dimension_error("cauchy_binet: index universe mismatch");
  if (m > inner_n) throw dimension_error("cauchy_binet: m exceeds inner dimension");

  const RationalMatrix product = b * c;
  const Rational left = minor_or_one(product, i, j);
  Rational right(0);
  for (const IndexSet& l : all_subsets(inner_n, m))
    right += minor_or_one(b, i, l) * minor_or_one(c, l, j);

  std::ostringstream inst;
  inst << "p=" << b.rows() << " n=" << inner_n << " q=" << c.cols() << " "
       << describe("", &i, &j);
  return make_report("cauchy_binet", inst.str(), left, right);
}

IdentityReport laplace_multicolumn(const RationalMatrix& m,
                                   const IndexSet& i) {
  const int n = m.rows();
  if (m.cols() != n)
    throw dimension_error("laplace_multicolumn: M not square");
  if (i.universe() != n)
    throw dimension_error("laplace_multicolumn: index universe mismatch");

  const Rational left = determinant(m);
  const IndexSet i_comp = i.complement();
  Rational right(0);
  for (const IndexSet& j : all_subsets(n, i.size()))
    right += parity_sign(i.index_sum() + j.index_sum()) *
             minor_or_one(m, j, i) * minor_or_one(m, j.complement(), i_comp);

  std::ostringstream inst;
  inst << "n=" << n << " I=" << i.to_string();
  return make_report("laplace_multicolumn", inst.str(), left, right);
}

namespace {

RationalMatrix random_int_matrix(RngStream& rng, int rows, int cols) {
  std::vector<long> entries(static_cast<size_t>(rows) *
                            static_cast<size_t>(cols));
  for (auto& e : entries)
    e = static_cast<long>(rng.next_below(19)) - 9;  // uniform in [-9, 9]
  return RationalMatrix::from_int_grid(rows, cols, entries);
}

RationalMatrix random_invertible(RngStream& rng, int n) {
  // Singular draws are rare at these sizes; regenerate until invertible.
  while (true) {
    RationalMatrix m = random_int_matrix(rng, n, n);
    if (determinant(m) != 0) return m;
  }
}

IndexSet random_subset(RngStream& rng, int universe, int m) {
  const long count = binomial(universe, m);
  return IndexSet::from_rank(universe, m,
                             static_cast<long>(rng.next_below(
                                 static_cast<std::uint64_t>(count))));
}

void run_trial(std::uint64_t seed, int trial, int max_n,
               std::vector<IdentityReport>& out) {
  RngStream rng(seed, static_cast<std::uint64_t>(trial));
  const int n = 2 + static_cast<int>(rng.next_below(
                        static_cast<std::uint64_t>(max_n - 1)));
  const int m = 1 + static_cast<int>(rng.next_below(
                        static_cast<std::uint64_t>(n)));

  const RationalMatrix square = random_invertible(rng, n);
  const RationalMatrix rhs = random_int_matrix(rng, n, m);
  const IndexSet i = random_subset(rng, n, m);
  const IndexSet j = random_subset(rng, n, m);
  out.push_back(cramer_minor(square, rhs, i));
  out.push_back(jacobi_complementary(square, i, j));
  out.push_back(laplace_multicolumn(square, i));

  const int p = m + static_cast<int>(rng.next_below(
                        static_cast<std::uint64_t>(max_n - m + 1)));
  const int q = m + static_cast<int>(rng.next_below(
                        static_cast<std::uint64_t>(max_n - m + 1)));
  const int inner_n = m + static_cast<int>(rng.next_below(
                              static_cast<std::uint64_t>(max_n - m + 1)));
  const RationalMatrix left_factor = random_int_matrix(rng, p, inner_n);
  const RationalMatrix right_factor = random_int_matrix(rng, inner_n, q);
  out.push_back(cauchy_binet(left_factor, right_factor,
                             random_subset(rng, p, m),
                             random_subset(rng, q, m)));
}

}  // namespace

std::vector<IdentityReport> fuzz_identities(const FuzzOptions& options) {
  if (options.trials < 0)
    throw parameter_error("fuzz_identities: negative trial count");
  if (options.max_n < 2)
    throw parameter_error("fuzz_identities: max_n must be at least 2");
  std::vector<std::vector<IdentityReport>> per_trial(
      static_cast<size_t>(options.trials));

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (options.parallel)
#endif
  for (int t = 0; t < options.trials; ++t)
    run_trial(options.seed, t, options.max_n,
              per_trial[static_cast<size_t>(t)]);

  std::vector<IdentityReport> out;
  out.reserve(static_cast<size_t>(options.trials) * 4);
  for (auto& reports : per_trial)
    for (auto& r : reports) out.push_back(std::move(r));
  return out;
}

}  // namespace meanproj
