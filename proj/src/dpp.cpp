#include "meanproj/dpp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace meanproj {

double KernelMatrix::symmetry_deviation() const {
  double deviation = 0.0;
  for (int i = 0; i < k.rows(); ++i)
    for (int j = i + 1; j < k.cols(); ++j)
      deviation = std::max(deviation, std::fabs(k(i, j) - k(j, i)));
  return deviation;
}

double KernelMatrix::idempotence_deviation() const {
  return (k * k - k).max_norm();
}

double KernelMatrix::trace() const {
  double tr = 0.0;
  for (int i = 0; i < k.rows(); ++i) tr += k(i, i);
  return tr;
}

void KernelMatrix::verify() const {
  if (k.rows() != k.cols())
    throw parameter_error("KernelMatrix: not square");
  if (rank < 1 || rank > k.rows())
    throw parameter_error("KernelMatrix: rank out of range");
  if (symmetry_deviation() > 1e-10)
    throw parameter_error("KernelMatrix: not symmetric");
  if (idempotence_deviation() > 1e-8)
    throw parameter_error("KernelMatrix: not idempotent");
  if (std::fabs(trace() - rank) > 1e-8)
    throw parameter_error("KernelMatrix: trace does not match declared rank");
}

Matrix orthonormalize_columns(const Matrix& span) {
  const int d = span.rows();
  const int n = span.cols();
  Matrix q = span;
  double leading = 0.0;
  for (int i = 0; i < d; ++i) leading += q(i, 0) * q(i, 0);
  leading = std::sqrt(leading);
  for (int col = 0; col < n; ++col) {
    for (int pass = 0; pass < 2; ++pass) {  // one reorthogonalization pass
      for (int prev = 0; prev < col; ++prev) {
        double overlap = 0.0;
        for (int i = 0; i < d; ++i) overlap += q(i, prev) * q(i, col);
        for (int i = 0; i < d; ++i) q(i, col) -= overlap * q(i, prev);
      }
    }
    double norm = 0.0;
    for (int i = 0; i < d; ++i) norm += q(i, col) * q(i, col);
    norm = std::sqrt(norm);
    if (norm < 1e-10 * std::max(leading, 1.0))
      throw rank_error("projection_kernel: spanning vectors are dependent");
    for (int i = 0; i < d; ++i) q(i, col) /= norm;
  }
  return q;
}

KernelMatrix projection_kernel(const Matrix& span) {
  if (span.cols() > span.rows())
    throw rank_error("projection_kernel: more vectors than dimensions");
  const Matrix frame = orthonormalize_columns(span);
  KernelMatrix kernel{frame * frame.transpose(), span.cols()};
  kernel.verify();
  return kernel;
}

std::vector<std::pair<IndexSet, double>> enumerate_discrete(
    const KernelMatrix& kernel) {
  const int d = kernel.dimension();
  if (d > 20)
    throw enumeration_size_error("enumerate_discrete: d > 20");
  std::vector<std::pair<IndexSet, double>> out;
  for (const IndexSet& subset : all_subsets(d, kernel.rank))
    out.emplace_back(subset,
                     determinant(submatrix(kernel.k, subset, subset)));
  return out;
}

namespace {

// One chain-rule pass over a frame with orthonormal columns: pick row index
// a with probability |row_a|^2 / remaining-rank, then remove the selected
// direction from the column span so row a's mass drops to zero.
std::vector<int> chain_rule_sample(Matrix frame, RngStream& rng) {
  const int d = frame.rows();
  const int n = frame.cols();
  std::vector<int> picked;
  std::vector<bool> used(static_cast<size_t>(d), false);
  for (int round = 0; round < n; ++round) {
    std::vector<double> mass(static_cast<size_t>(d), 0.0);
    double total = 0.0;
    for (int a = 0; a < d; ++a) {
      if (used[static_cast<size_t>(a)]) continue;
      double row_sq = 0.0;
      for (int j = 0; j < n; ++j) row_sq += frame(a, j) * frame(a, j);
      mass[static_cast<size_t>(a)] = row_sq;
      total += row_sq;
    }
    if (total < 1e-8 * (n - round))
      throw degeneracy_error(
          "sample_discrete: residual intensity lost rank during deflation");
    double u = rng.next_double() * total;
    int selected = -1;
    for (int a = 0; a < d; ++a) {
      if (used[static_cast<size_t>(a)]) continue;
      u -= mass[static_cast<size_t>(a)];
      if (u <= 0.0) {
        selected = a;
        break;
      }
    }
    if (selected < 0) {  // fell off the end by roundoff: last live index
      for (int a = d - 1; a >= 0; --a)
        if (!used[static_cast<size_t>(a)]) {
          selected = a;
          break;
        }
    }
    picked.push_back(selected);
    used[static_cast<size_t>(selected)] = true;

    // Deflate: rotate the column span so the selected row's direction is a
    // single column, then drop that component from every row.
    const double row_norm =
        std::sqrt(mass[static_cast<size_t>(selected)]);
    std::vector<double> unit(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j)
      unit[static_cast<size_t>(j)] = frame(selected, j) / row_norm;
    for (int a = 0; a < d; ++a) {
      double overlap = 0.0;
      for (int j = 0; j < n; ++j)
        overlap += frame(a, j) * unit[static_cast<size_t>(j)];
      for (int j = 0; j < n; ++j)
        frame(a, j) -= overlap * unit[static_cast<size_t>(j)];
    }
  }
  return picked;
}

}  // namespace

Matrix kernel_frame(const KernelMatrix& kernel) {
  const int d = kernel.dimension();
  const int n = kernel.rank;
  Matrix frame(d, n);
  // K = K^2 = K K^T, so the columns of K span the range; orthonormalize the
  // n most independent ones.
  Matrix cols = kernel.k;
  std::vector<int> order;
  std::vector<bool> taken(static_cast<size_t>(d), false);
  Matrix work = cols;
  for (int round = 0; round < n; ++round) {
    int best = -1;
    double best_norm = 0.0;
    for (int c = 0; c < d; ++c) {
      if (taken[static_cast<size_t>(c)]) continue;
      double norm = 0.0;
      for (int i = 0; i < d; ++i) norm += work(i, c) * work(i, c);
      if (norm > best_norm) {
        best_norm = norm;
        best = c;
      }
    }
    if (best < 0 || best_norm < 1e-16)
      throw rank_error("sample_discrete: kernel rank below declared rank");
    taken[static_cast<size_t>(best)] = true;
    const double inv_norm = 1.0 / std::sqrt(best_norm);
    for (int i = 0; i < d; ++i) frame(i, round) = work(i, best) * inv_norm;
    for (int c = 0; c < d; ++c) {
      if (taken[static_cast<size_t>(c)]) continue;
      double overlap = 0.0;
      for (int i = 0; i < d; ++i) overlap += frame(i, round) * work(i, c);
      for (int i = 0; i < d; ++i) work(i, c) -= overlap * frame(i, round);
    }
  }
  return frame;
}

IndexSet sample_discrete(const KernelMatrix& kernel, RngStream& rng) {
  kernel.verify();
  const Matrix frame = kernel_frame(kernel);
  std::vector<int> picked = chain_rule_sample(frame, rng);
  std::vector<int> sorted;
  sorted.reserve(picked.size());
  for (int a : picked) sorted.push_back(a + 1);
  std::sort(sorted.begin(), sorted.end());
  return IndexSet(std::move(sorted), kernel.dimension());
}

std::pair<KernelMatrix, std::vector<double>> discretize(
    const OrthonormalBasis& basis) {
  const GroundSpace& space = basis.space();
  const int q = space.node_count();
  const int n = basis.dimension();
  if (space.kind() == GroundSpace::Kind::kInterval && q < 4 * n)
    throw discretization_error("discretize: need Q >= 4n quadrature nodes");
  const double gram_deviation = basis.gram_deviation();
  if (gram_deviation > 1e-6) {
    std::ostringstream os;
    os << "discretize: quadrature too coarse, Gram deviation "
       << gram_deviation;
    throw discretization_error(os.str());
  }
  Matrix frame(q, n);
  for (int a = 0; a < q; ++a) {
    const double sqrt_w = std::sqrt(space.weights()[static_cast<size_t>(a)]);
    for (int j = 1; j <= n; ++j)
      frame(a, j - 1) =
          sqrt_w * basis.evaluate(j, space.nodes()[static_cast<size_t>(a)]);
  }
  KernelMatrix kernel{frame * frame.transpose(), n};
  return {std::move(kernel), space.nodes()};
}

ContinuousSampler::ContinuousSampler(const OrthonormalBasis& basis)
    : kernel_{Matrix(1, 1), 1}, frame_(1, 1) {
  auto [kernel, nodes] = discretize(basis);
  kernel_ = std::move(kernel);
  nodes_ = std::move(nodes);
  const int q = static_cast<int>(nodes_.size());
  const int n = kernel_.rank;
  Matrix frame(q, n);
  const GroundSpace& space = basis.space();
  for (int a = 0; a < q; ++a) {
    const double sqrt_w = std::sqrt(space.weights()[static_cast<size_t>(a)]);
    for (int j = 1; j <= n; ++j)
      frame(a, j - 1) = sqrt_w * basis.evaluate(j, nodes_[static_cast<size_t>(a)]);
  }
  frame_ = std::move(frame);
}

PointConfiguration ContinuousSampler::sample(RngStream& rng) const {
  std::vector<int> picked = chain_rule_sample(frame_, rng);
  PointConfiguration out;
  out.points.reserve(picked.size());
  for (int a : picked) out.points.push_back(nodes_[static_cast<size_t>(a)]);
  out.distinct = true;
  return out;
}

PointConfiguration sample_continuous(const OrthonormalBasis& basis,
                                     RngStream& rng) {
  return ContinuousSampler(basis).sample(rng);
}

double log_density(const OrthonormalBasis& basis,
                   const PointConfiguration& x) {
  const int n = basis.dimension();
  if (static_cast<int>(x.points.size()) != n)
    throw dimension_error("log_density: configuration size must equal n");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 1; j <= n; ++j)
      m(i, j - 1) = basis.evaluate(j, x.points[static_cast<size_t>(i)]);
  const double det = determinant(m);
  if (det == 0.0) return -std::numeric_limits<double>::infinity();
  return 2.0 * std::log(std::fabs(det));
}

}  // namespace meanproj
