#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "meanproj/dpp.hpp"
#include "meanproj/function_space.hpp"
#include "meanproj/index_set.hpp"

namespace meanproj {

// Monte Carlo loops run either serially or with OpenMP over replicates.
// Both modes write per-replicate results into index-addressed slots and
// reduce in replicate order, so their outputs are identical; the serial
// mode is the reference the parallel one is tested against.
enum class ExecPolicy { kSerial, kParallel };

// P_X f in coordinates: f = sum alpha_j phi_j on the configuration X.
struct InterpolationResult {
  std::vector<double> coefficients;
  PointConfiguration configuration;
  double abs_det_m;  // condition indicator
};

// Expansion of an element of the m-th wedge power of H over the orthonormal
// wedges phi_I, one coefficient per m-subset I of {1..n}.
struct WedgeCoefficients {
  int order;
  std::map<IndexSet, double> coefficients;
};

struct MomentRow {
  IndexSet subset;
  double mean;
  double variance;
  double stderr_;
  double target;  // det G^I
  double z_score;
};

struct MomentReport {
  std::vector<MomentRow> rows;
  long replicates = 0;
  std::uint64_t seed = 0;
  long degenerate_redraws = 0;
};

struct VarianceReport {
  double empirical_total = 0.0;
  double empirical_stderr = 0.0;
  double closed_form_total = 0.0;
  // per-k contributions binom(n-m+k, k) * ||Pi_k||^2, k = 1..m
  std::vector<double> per_k;
  // per-I second moments E[(det A^I)^2] from the Gram-form oracle
  std::vector<std::pair<IndexSet, double>> per_subset_second_moment;
  long replicates = 0;
  std::uint64_t seed = 0;
  long degenerate_redraws = 0;
};

struct DiscreteTheoremReport {
  int dimension;
  int rank;
  int order;
  double max_deviation;  // over all m x m minor positions
};

// Solves the collocation system M alpha = f(X), M = (phi_j(x_i)).
InterpolationResult interpolate(const OrthonormalBasis& basis,
                                const PointConfiguration& x,
                                const FunctionHandle& f);

// det A^I for the solution A of M A = F, F = (f_j(x_i)). Computed by the
// direct solve and cross-checked against the column-replacement route
// (det M)^-1 det M_[I<-F] on every call.
double minor_statistic(const OrthonormalBasis& basis,
                       const PointConfiguration& x,
                       const std::vector<FunctionHandle>& fs,
                       const IndexSet& subset);

// All minors det A^I at once, with the same always-on cross-check.
WedgeCoefficients minor_statistics(const OrthonormalBasis& basis,
                                   const PointConfiguration& x,
                                   const std::vector<FunctionHandle>& fs,
                                   int m);

// det G^I with G = (<phi_i, f_j>).
double target_minor(const OrthonormalBasis& basis,
                    const std::vector<FunctionHandle>& fs,
                    const IndexSet& subset);

WedgeCoefficients target_minors(const OrthonormalBasis& basis,
                                const std::vector<FunctionHandle>& fs, int m);

struct MonteCarloOptions {
  long replicates = 1000;
  std::uint64_t seed = 0;
  ExecPolicy policy = ExecPolicy::kParallel;
  int max_redraws = 100;  // bound on degenerate-sample redraws per replicate
};

// Monte Carlo check of E[det A^I] = det G^I for every m-subset I.
MomentReport estimate_mean_minors(const OrthonormalBasis& basis,
                                  const std::vector<FunctionHandle>& fs,
                                  int m, const MonteCarloOptions& options);

// Closed-form variance sum_{k=1..m} binom(n-m+k,k) ||Pi_k(f_1^...^f_m)||^2.
VarianceReport closed_form_variance(const OrthonormalBasis& basis,
                                    const std::vector<FunctionHandle>& fs,
                                    int m);

// Monte Carlo estimate of E[ sum_I (det A^I - det G^I)^2 ], the squared
// wedge distance between the random and the orthogonal projection. Fills
// both the empirical and the closed-form sides of the report.
VarianceReport empirical_variance(const OrthonormalBasis& basis,
                                  const std::vector<FunctionHandle>& fs,
                                  int m, const MonteCarloOptions& options);

// E[(det A^I)^2] = det(<f_i, (P_{H-perp} + P_{H_I}) f_j>), the Gram form
// obtained from the Schur complement of the block inner-product matrix.
double second_moment_oracle(const OrthonormalBasis& basis,
                            const std::vector<FunctionHandle>& fs,
                            const IndexSet& subset);

struct EzEstimate {
  std::vector<double> coefficients;  // unbiased for <phi_j, f>
  bool has_integral_estimate = false;
  double integral_estimate = 0.0;  // of f d-lambda, when phi_1 is constant
};

// The scalar (m = 1) estimator: P_X f is unbiased for P_H f; when phi_1 is
// a constant c, alpha_1 * c * lambda(S) estimates the integral of f.
EzEstimate ez_estimate(const OrthonormalBasis& basis, const FunctionHandle& f,
                       const PointConfiguration& x);

// Exhaustive check that every m x m minor of the interpolation projection
// averages to the matching minor of K, over all n-subsets weighted by their
// probabilities. Guarded to d <= 12.
DiscreteTheoremReport verify_discrete_theorem(const KernelMatrix& kernel,
                                              int m);

}  // namespace meanproj
