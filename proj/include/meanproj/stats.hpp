#pragma once

#include <vector>

namespace meanproj {

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x),
// series for x < a+1 and continued fraction otherwise.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Upper tail of the chi-squared distribution with `dof` degrees of freedom.
double chi_squared_pvalue(double statistic, int dof);

// Pearson statistic and p-value for observed counts against expected counts.
double chi_squared_statistic(const std::vector<double>& observed,
                             const std::vector<double>& expected);

// Two-sided Kolmogorov-Smirnov p-value for a sample against a uniform [a,b]
// law, using the asymptotic Kolmogorov distribution.
double ks_uniform_pvalue(std::vector<double> sample, double a, double b);

// Compensated (Kahan) accumulator; keeps parallel-then-ordered reductions
// independent of the partitioning.
class KahanSum {
 public:
  void add(double x);
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace meanproj
