#pragma once

#include <utility>
#include <vector>

#include "meanproj/function_space.hpp"
#include "meanproj/index_set.hpp"
#include "meanproj/matrix.hpp"
#include "meanproj/rng.hpp"

namespace meanproj {

// A d x d symmetric idempotent matrix of declared rank n. Its determinantal
// process draws exactly n points.
struct KernelMatrix {
  Matrix k;
  int rank;

  int dimension() const { return k.rows(); }
  double symmetry_deviation() const;
  double idempotence_deviation() const;
  double trace() const;
  void verify() const;  // throws parameter_error on a violated invariant
};

// A sample X: n distinct points of S, in draw order.
struct PointConfiguration {
  std::vector<double> points;
  bool distinct = true;
};

// K = Phi Phi^T for an orthonormal frame Phi spanning the same space as the
// given vectors (columns of `span`, d x n). Throws rank_error if dependent.
KernelMatrix projection_kernel(const Matrix& span);

// Orthonormalizes the columns of `span` by modified Gram-Schmidt with one
// reorthogonalization pass.
Matrix orthonormalize_columns(const Matrix& span);

// Recovers a d x n orthonormal column frame with K = Phi Phi^T from the
// kernel, by pivoted Gram-Schmidt on its columns.
Matrix kernel_frame(const KernelMatrix& kernel);

// All n-subsets of {1..d} with their probabilities det K_{S'}. Guarded to
// d <= 20; probabilities sum to 1 by Cauchy-Binet.
std::vector<std::pair<IndexSet, double>> enumerate_discrete(
    const KernelMatrix& kernel);

// Draws an n-subset by the projection chain rule: each point comes from the
// current marginal intensity, then the frame is deflated against the
// selected coordinate direction so it cannot be drawn again.
IndexSet sample_discrete(const KernelMatrix& kernel, RngStream& rng);

// Discretization of the continuous projection process on the quadrature
// grid: Ktilde_{ab} = sqrt(w_a w_b) sum_j phi_j(x_a) phi_j(x_b). Returns the
// kernel and the node list. Requires Q >= 4n and a Gram deviation <= 1e-6.
std::pair<KernelMatrix, std::vector<double>> discretize(
    const OrthonormalBasis& basis);

// Holds the discretized kernel's frame so repeated sampling skips the
// rebuild. Samples node indices and maps them to points.
class ContinuousSampler {
 public:
  explicit ContinuousSampler(const OrthonormalBasis& basis);

  PointConfiguration sample(RngStream& rng) const;
  const KernelMatrix& kernel() const { return kernel_; }
  const std::vector<double>& nodes() const { return nodes_; }

 private:
  KernelMatrix kernel_;
  std::vector<double> nodes_;
  Matrix frame_;  // d x n orthonormal columns
};

PointConfiguration sample_continuous(const OrthonormalBasis& basis,
                                     RngStream& rng);

// log |det(phi_j(x_i))|^2; returns -infinity when the determinant vanishes.
double log_density(const OrthonormalBasis& basis,
                   const PointConfiguration& x);

}  // namespace meanproj
