#pragma once

#include <string>
#include <vector>

#include "meanproj/rational_matrix.hpp"

namespace meanproj {

// Result of checking one determinantal identity on one exact instance.
struct IdentityReport {
  std::string identity;
  std::string instance;  // dimensions and index sets
  Rational left;
  Rational right;
  bool holds;  // left == right exactly
};

// det A^I == (det M)^-1 det M_[I<-F] for the solution A of M A = F.
IdentityReport cramer_minor(const RationalMatrix& m, const RationalMatrix& f,
                            const IndexSet& rows);

// det (M^-1)^I_J == (-1)^(sum I + sum J) (det M)^-1 det M^{Jc}_{Ic}.
IdentityReport jacobi_complementary(const RationalMatrix& m, const IndexSet& i,
                                    const IndexSet& j);

// det (BC)^I_J == sum over m-subsets L of det B^I_L det C^L_J.
IdentityReport cauchy_binet(const RationalMatrix& b, const RationalMatrix& c,
                            const IndexSet& i, const IndexSet& j);

// Expansion of det M along the columns in I:
// det M == sum_J (-1)^(sum I + sum J) det M^J_I det M^{Jc}_{Ic}.
IdentityReport laplace_multicolumn(const RationalMatrix& m, const IndexSet& i);

struct FuzzOptions {
  unsigned long seed = 0;
  int trials = 0;
  int max_n = 4;
  bool parallel = true;
};

// Runs all four checkers on random integer instances (entries in [-9,9],
// singular draws regenerated). Deterministic given the seed; trial order in
// the output is by trial index regardless of threading.
std::vector<IdentityReport> fuzz_identities(const FuzzOptions& options);

}  // namespace meanproj
