#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "meanproj/errors.hpp"
#include "meanproj/matrix.hpp"

namespace meanproj {

// A pointwise-evaluable function on the ground space. Evaluators must be
// pure: the same argument always yields the same value.
using FunctionHandle = std::function<double(double)>;

enum class WeightFamily { kLebesgue, kChebyshev, kGaussian };

// The pair (S, lambda): either an interval with a weight density and a
// Gauss-type quadrature rule, or a finite set of atoms with positive weights.
// Inner products are quadrature sums, which is exact for the polynomial
// integrands the quadrature was chosen for.
class GroundSpace {
 public:
  enum class Kind { kInterval, kDiscrete };

  // Interval space with a Gauss rule matched to the weight:
  // Gauss-Legendre for Lebesgue on [a,b], Gauss-Chebyshev for the
  // 1/sqrt(1-x^2) weight on (-1,1), Gauss-Hermite for exp(-x^2) on R
  // (endpoints ignored for the Gaussian weight).
  static GroundSpace interval(double a, double b, WeightFamily weight,
                              int quadrature_size);

  static GroundSpace discrete(std::vector<double> atoms,
                              std::vector<double> weights);

  Kind kind() const { return kind_; }
  WeightFamily weight() const { return weight_; }
  double a() const { return a_; }
  double b() const { return b_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  double total_mass() const;
  double integral(const FunctionHandle& f) const;
  double inner(const FunctionHandle& f, const FunctionHandle& g) const;

 private:
  GroundSpace() = default;
  Kind kind_ = Kind::kInterval;
  WeightFamily weight_ = WeightFamily::kLebesgue;
  double a_ = -1.0;
  double b_ = 1.0;
  std::vector<double> nodes_;    // quadrature nodes / atoms, increasing
  std::vector<double> weights_;  // quadrature weights / atom masses
};

enum class BasisFamily {
  kLegendre,
  kChebyshev,
  kHermite,
  kFourier,
  kGramSchmidtCustom,
  kDiscreteCoordinate,
};

BasisFamily basis_family_from_name(const std::string& name);
std::string basis_family_name(BasisFamily family);

// phi_1..phi_n, an orthonormal basis of the subspace H under the space's
// inner product. Construction verifies the Gram matrix against the identity.
class OrthonormalBasis {
 public:
  OrthonormalBasis(GroundSpace space, int n, BasisFamily family);

  // Gram-Schmidt (with one reorthogonalization pass) applied to seed
  // functions; throws rank_error on numerically dependent seeds.
  OrthonormalBasis(GroundSpace space, std::vector<FunctionHandle> seeds);

  const GroundSpace& space() const { return space_; }
  int dimension() const { return n_; }
  BasisFamily family() const { return family_; }

  // phi_j(x), 1-based j.
  double evaluate(int j, double x) const;
  FunctionHandle basis_function(int j) const;

  // Coefficients <phi_j, f> of the orthogonal projection onto H.
  std::vector<double> projection_coefficients(const FunctionHandle& f) const;
  FunctionHandle project_h(const FunctionHandle& f) const;
  FunctionHandle project_h_perp(const FunctionHandle& f) const;

  // D_t f = P_H f + t P_{H-perp} f.
  FunctionHandle apply_dt(const FunctionHandle& f, double t) const;

  // Entrywise max deviation of the Gram matrix from the identity.
  double gram_deviation() const;

 private:
  void verify_gram() const;

  GroundSpace space_;
  int n_;
  BasisFamily family_;
  std::vector<FunctionHandle> functions_;
};

// (f_1 ^ ... ^ f_m)(y_1,...,y_m) = det(f_j(y_i)).
double wedge_eval(const std::vector<FunctionHandle>& fs,
                  const std::vector<double>& ys);

// <g_1^...^g_m, h_1^...^h_m> = det(<g_i, h_j>), the Gram-determinant form of
// the wedge inner product in L^2(S^m, (1/m!) lambda^m).
double wedge_inner(const std::vector<FunctionHandle>& gs,
                   const std::vector<FunctionHandle>& hs,
                   const GroundSpace& space);

// Diagnostic path: the same inner product by m-fold tensor quadrature with
// the 1/m! normalization. Only for m <= 3; the cost is Q^m.
double wedge_inner_quadrature(const std::vector<FunctionHandle>& gs,
                              const std::vector<FunctionHandle>& hs,
                              const GroundSpace& space);

// One summand of a graded wedge: a plain wedge of projected factors.
struct WedgeTerm {
  std::vector<FunctionHandle> factors;
  std::vector<bool> in_h_perp;  // factor p carries P_{H-perp} if set
};

// The grade-k component of f_1^...^f_m under the splitting of L^2(S)^{x m}
// by H and its orthocomplement: the sum over all ways of sending exactly k
// factors to H-perp and the rest to H.
struct GradedWedge {
  int order = 0;
  int grade = 0;
  std::vector<WedgeTerm> terms;

  double evaluate(const std::vector<double>& ys) const;
};

GradedWedge graded_project(const OrthonormalBasis& basis,
                           const std::vector<FunctionHandle>& fs, int k);

// Wedge inner product of two graded components, by Gram determinants on
// every pair of terms; never by m-fold quadrature.
double graded_pairing(const GradedWedge& lhs, const GradedWedge& rhs,
                      const GroundSpace& space);

// || Pi_k(f_1 ^ ... ^ f_m) ||^2.
double pi_k_norm_sq(const OrthonormalBasis& basis,
                    const std::vector<FunctionHandle>& fs, int k);

// Gauss rules used by GroundSpace; exposed for tests.
void gauss_legendre(int q, std::vector<double>& nodes,
                    std::vector<double>& weights);
void gauss_hermite(int q, std::vector<double>& nodes,
                   std::vector<double>& weights);
void gauss_chebyshev(int q, std::vector<double>& nodes,
                     std::vector<double>& weights);

}  // namespace meanproj
