#include "meanproj/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "meanproj/stats.hpp"

namespace meanproj {

namespace {

// Replicate loop shared by every Monte Carlo driver. Results land in
// index-addressed slots, so the OpenMP path reproduces the serial reference
// exactly and the reduction order never depends on the thread count.
template <typename Body>
void run_replicates(long replicates, ExecPolicy policy, const Body& body) {
  if (policy == ExecPolicy::kSerial) {
    for (long r = 0; r < replicates; ++r) body(r);
    return;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (long r = 0; r < replicates; ++r) body(r);
#else
  for (long r = 0; r < replicates; ++r) body(r);
#endif
}

Matrix collocation_matrix(const OrthonormalBasis& basis,
                          const PointConfiguration& x) {
  const int n = basis.dimension();
  if (static_cast<int>(x.points.size()) != n)
    throw dimension_error("collocation: configuration size must equal n");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 1; j <= n; ++j)
      m(i, j - 1) = basis.evaluate(j, x.points[static_cast<size_t>(i)]);
  return m;
}

Matrix evaluation_matrix(const std::vector<FunctionHandle>& fs,
                         const PointConfiguration& x) {
  const int rows = static_cast<int>(x.points.size());
  const int cols = static_cast<int>(fs.size());
  Matrix f(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double v =
          fs[static_cast<size_t>(j)](x.points[static_cast<size_t>(i)]);
      if (!std::isfinite(v))
        throw evaluation_error("evaluation matrix: non-finite value");
      f(i, j) = v;
    }
  return f;
}

struct MeanStd {
  double mean;
  double variance;  // unbiased sample variance
  double stderr_;
};

MeanStd reduce_column(const std::vector<double>& values) {
  const long count = static_cast<long>(values.size());
  KahanSum sum;
  for (double v : values) sum.add(v);
  const double mean = sum.value() / count;
  KahanSum sq;
  for (double v : values) sq.add((v - mean) * (v - mean));
  const double variance = count > 1 ? sq.value() / (count - 1) : 0.0;
  return {mean, variance, std::sqrt(variance / count)};
}

}  // namespace

InterpolationResult interpolate(const OrthonormalBasis& basis,
                                const PointConfiguration& x,
                                const FunctionHandle& f) {
  const Matrix m = collocation_matrix(basis, x);
  Matrix rhs(m.rows(), 1);
  for (int i = 0; i < m.rows(); ++i) {
    const double v = f(x.points[static_cast<size_t>(i)]);
    if (!std::isfinite(v))
      throw evaluation_error("interpolate: non-finite function value");
    rhs(i, 0) = v;
  }
  Matrix alpha(1, 1);
  try {
    alpha = solve(m, rhs);
  } catch (const singularity_error& e) {
    std::ostringstream os;
    os << "interpolate: near-singular collocation matrix (pivot " << e.pivot
       << ")";
    throw degeneracy_error(os.str());
  }
  InterpolationResult out;
  out.coefficients.resize(static_cast<size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i)
    out.coefficients[static_cast<size_t>(i)] = alpha(i, 0);
  out.configuration = x;
  out.abs_det_m = std::fabs(determinant(m));
  return out;
}

WedgeCoefficients minor_statistics(const OrthonormalBasis& basis,
                                   const PointConfiguration& x,
                                   const std::vector<FunctionHandle>& fs,
                                   int m) {
  const int n = basis.dimension();
  if (static_cast<int>(fs.size()) != m)
    throw dimension_error("minor_statistics: |fs| must equal m");
  if (m < 1 || m > n)
    throw dimension_error("minor_statistics: need 1 <= m <= n");
  const Matrix coll = collocation_matrix(basis, x);
  const Matrix f = evaluation_matrix(fs, x);
  const double det_m = determinant(coll);
  if (std::fabs(det_m) < kSingularityThreshold * coll.max_norm())
    throw degeneracy_error("minor_statistics: near-singular collocation matrix");
  Matrix a(1, 1);
  try {
    a = solve(coll, f);
  } catch (const singularity_error&) {
    throw degeneracy_error("minor_statistics: near-singular collocation matrix");
  }
  WedgeCoefficients out;
  out.order = m;
  for (const IndexSet& subset : all_subsets(n, m)) {
    const double direct = determinant(submatrix_rows(a, subset));
    const double via_cramer =
        determinant(replace_columns(coll, subset, f)) / det_m;
    const double scale =
        std::max({1.0, std::fabs(direct), std::fabs(via_cramer)});
    if (std::fabs(direct - via_cramer) > 1e-9 * scale) {
      std::ostringstream os;
      os << "minor_statistics: solve path " << direct
         << " and column-replacement path " << via_cramer << " disagree at I="
         << subset.to_string();
      throw degeneracy_error(os.str());
    }
    out.coefficients.emplace(subset, direct);
  }
  return out;
}

double minor_statistic(const OrthonormalBasis& basis,
                       const PointConfiguration& x,
                       const std::vector<FunctionHandle>& fs,
                       const IndexSet& subset) {
  const WedgeCoefficients all =
      minor_statistics(basis, x, fs, static_cast<int>(fs.size()));
  const auto it = all.coefficients.find(subset);
  if (it == all.coefficients.end())
    throw dimension_error("minor_statistic: subset outside P_m([n])");
  return it->second;
}

WedgeCoefficients target_minors(const OrthonormalBasis& basis,
                                const std::vector<FunctionHandle>& fs,
                                int m) {
  const int n = basis.dimension();
  if (static_cast<int>(fs.size()) != m)
    throw dimension_error("target_minors: |fs| must equal m");
  Matrix g(n, m);
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < m; ++j)
      g(i - 1, j) = basis.space().inner(basis.basis_function(i),
                                        fs[static_cast<size_t>(j)]);
  WedgeCoefficients out;
  out.order = m;
  for (const IndexSet& subset : all_subsets(n, m))
    out.coefficients.emplace(subset, determinant(submatrix_rows(g, subset)));
  return out;
}

double target_minor(const OrthonormalBasis& basis,
                    const std::vector<FunctionHandle>& fs,
                    const IndexSet& subset) {
  const WedgeCoefficients all =
      target_minors(basis, fs, static_cast<int>(fs.size()));
  const auto it = all.coefficients.find(subset);
  if (it == all.coefficients.end())
    throw dimension_error("target_minor: subset outside P_m([n])");
  return it->second;
}

namespace {

// Samples a configuration and evaluates all minors, redrawing on the
// (near-)degenerate draws the measure assigns vanishing weight to.
WedgeCoefficients sample_minors(const ContinuousSampler& sampler,
                                const OrthonormalBasis& basis,
                                const std::vector<FunctionHandle>& fs, int m,
                                RngStream& rng, int max_redraws,
                                long& redraw_count) {
  for (int attempt = 0; attempt <= max_redraws; ++attempt) {
    const PointConfiguration x = sampler.sample(rng);
    try {
      return minor_statistics(basis, x, fs, m);
    } catch (const degeneracy_error&) {
      ++redraw_count;
    }
  }
  throw degeneracy_error("Monte Carlo: degenerate-sample redraw budget exhausted");
}

}  // namespace

MomentReport estimate_mean_minors(const OrthonormalBasis& basis,
                                  const std::vector<FunctionHandle>& fs,
                                  int m, const MonteCarloOptions& options) {
  if (options.replicates < 2)
    throw parameter_error("estimate_mean_minors: need at least 2 replicates");
  const int n = basis.dimension();
  const std::vector<IndexSet> subsets = all_subsets(n, m);
  const size_t width = subsets.size();
  const ContinuousSampler sampler(basis);
  const WedgeCoefficients targets = target_minors(basis, fs, m);

  std::vector<double> values(static_cast<size_t>(options.replicates) * width);
  std::vector<long> redraws(static_cast<size_t>(options.replicates), 0);
  run_replicates(options.replicates, options.policy, [&](long r) {
    RngStream rng(options.seed, static_cast<std::uint64_t>(r));
    const WedgeCoefficients minors =
        sample_minors(sampler, basis, fs, m, rng, options.max_redraws,
                      redraws[static_cast<size_t>(r)]);
    size_t col = 0;
    for (const IndexSet& subset : subsets)
      values[static_cast<size_t>(r) * width + col++] =
          minors.coefficients.at(subset);
  });

  MomentReport report;
  report.replicates = options.replicates;
  report.seed = options.seed;
  for (long x : redraws) report.degenerate_redraws += x;
  std::vector<double> column(static_cast<size_t>(options.replicates));
  for (size_t col = 0; col < width; ++col) {
    for (long r = 0; r < options.replicates; ++r)
      column[static_cast<size_t>(r)] =
          values[static_cast<size_t>(r) * width + col];
    const MeanStd stats = reduce_column(column);
    const double target = targets.coefficients.at(subsets[col]);
    // floor the standard error at the roundoff scale of the statistic, so a
    // deterministic statistic (zero sampling variance) does not turn its own
    // rounding noise into an arbitrarily large z-score
    const double noise_floor = 1e-14 * std::max(1.0, std::fabs(target));
    const double z = (stats.mean - target) / std::max(stats.stderr_, noise_floor);
    report.rows.push_back(MomentRow{subsets[col], stats.mean, stats.variance,
                                    stats.stderr_, target, z});
  }
  return report;
}

double second_moment_oracle(const OrthonormalBasis& basis,
                            const std::vector<FunctionHandle>& fs,
                            const IndexSet& subset) {
  const int m = static_cast<int>(fs.size());
  if (subset.size() != m)
    throw dimension_error("second_moment_oracle: |I| must equal m");
  const int n = basis.dimension();
  const GroundSpace& space = basis.space();
  // <f_i, (P_Hperp + P_{H_I}) f_j> = <f_i, f_j> - sum_{b not in I}
  // <f_i, phi_b><phi_b, f_j>
  Matrix overlap(m, n);
  for (int i = 0; i < m; ++i)
    for (int b = 1; b <= n; ++b)
      overlap(i, b - 1) = space.inner(fs[static_cast<size_t>(i)],
                                      basis.basis_function(b));
  Matrix form(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double entry = space.inner(fs[static_cast<size_t>(i)],
                                 fs[static_cast<size_t>(j)]);
      for (int b = 1; b <= n; ++b)
        if (!subset.contains(b)) entry -= overlap(i, b - 1) * overlap(j, b - 1);
      form(i, j) = entry;
    }
  return determinant(form);
}

VarianceReport closed_form_variance(const OrthonormalBasis& basis,
                                    const std::vector<FunctionHandle>& fs,
                                    int m) {
  const int n = basis.dimension();
  if (static_cast<int>(fs.size()) != m)
    throw dimension_error("closed_form_variance: |fs| must equal m");
  if (m < 1 || m > n)
    throw dimension_error("closed_form_variance: need 1 <= m <= n");
  VarianceReport report;
  KahanSum total;
  for (int k = 1; k <= m; ++k) {
    const double contribution = static_cast<double>(binomial(n - m + k, k)) *
                                pi_k_norm_sq(basis, fs, k);
    report.per_k.push_back(contribution);
    total.add(contribution);
  }
  report.closed_form_total = total.value();
  for (const IndexSet& subset : all_subsets(n, m))
    report.per_subset_second_moment.emplace_back(
        subset, second_moment_oracle(basis, fs, subset));
  return report;
}

VarianceReport empirical_variance(const OrthonormalBasis& basis,
                                  const std::vector<FunctionHandle>& fs,
                                  int m, const MonteCarloOptions& options) {
  if (options.replicates < 2)
    throw parameter_error("empirical_variance: need at least 2 replicates");
  const int n = basis.dimension();
  const std::vector<IndexSet> subsets = all_subsets(n, m);
  const ContinuousSampler sampler(basis);
  const WedgeCoefficients targets = target_minors(basis, fs, m);

  std::vector<double> sq_norms(static_cast<size_t>(options.replicates));
  std::vector<long> redraws(static_cast<size_t>(options.replicates), 0);
  run_replicates(options.replicates, options.policy, [&](long r) {
    RngStream rng(options.seed, static_cast<std::uint64_t>(r));
    const WedgeCoefficients minors =
        sample_minors(sampler, basis, fs, m, rng, options.max_redraws,
                      redraws[static_cast<size_t>(r)]);
    // squared wedge distance, expanded over the orthonormal wedges phi_I
    KahanSum sq;
    for (const IndexSet& subset : subsets) {
      const double diff = minors.coefficients.at(subset) -
                          targets.coefficients.at(subset);
      sq.add(diff * diff);
    }
    sq_norms[static_cast<size_t>(r)] = sq.value();
  });

  VarianceReport report = closed_form_variance(basis, fs, m);
  const MeanStd stats = reduce_column(sq_norms);
  report.empirical_total = stats.mean;
  report.empirical_stderr = stats.stderr_;
  report.replicates = options.replicates;
  report.seed = options.seed;
  for (long x : redraws) report.degenerate_redraws += x;
  return report;
}

EzEstimate ez_estimate(const OrthonormalBasis& basis, const FunctionHandle& f,
                       const PointConfiguration& x) {
  const InterpolationResult result = interpolate(basis, x, f);
  EzEstimate out;
  out.coefficients = result.coefficients;
  // When phi_1 is a constant c, alpha_1 c lambda(S) estimates the integral.
  const GroundSpace& space = basis.space();
  const double at_first = basis.evaluate(1, space.nodes().front());
  const double at_last = basis.evaluate(1, space.nodes().back());
  if (std::fabs(at_first - at_last) < 1e-13 * std::fabs(at_first)) {
    out.has_integral_estimate = true;
    out.integral_estimate =
        out.coefficients.front() * at_first * space.total_mass();
  }
  return out;
}

DiscreteTheoremReport verify_discrete_theorem(const KernelMatrix& kernel,
                                              int m) {
  kernel.verify();
  const int d = kernel.dimension();
  const int n = kernel.rank;
  if (d > 12)
    throw enumeration_size_error("verify_discrete_theorem: d > 12");
  if (m < 1 || m > n)
    throw dimension_error("verify_discrete_theorem: need 1 <= m <= n");
  const Matrix frame = kernel_frame(kernel);
  const auto law = enumerate_discrete(kernel);

  // Oblique interpolation projections, one per subset of positive weight.
  std::vector<std::pair<Matrix, double>> projections;
  for (const auto& [subset, probability] : law) {
    if (probability < 1e-13) continue;  // exact zeros of the law, up to roundoff
    Matrix frame_rows(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) frame_rows(i, j) = frame(subset[i] - 1, j);
    Matrix placed(1, 1);
    try {
      placed = frame * solve(frame_rows, Matrix::identity(n));
    } catch (const singularity_error&) {
      // det K_X = |det Phi^X|^2 > 0, so this cannot happen for a subset of
      // positive probability
      throw degeneracy_error(
          "verify_discrete_theorem: singular frame rows at positive probability");
    }
    Matrix projection(d, d);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < d; ++i) projection(i, subset[k] - 1) = placed(i, k);
    projections.emplace_back(std::move(projection), probability);
  }

  const std::vector<IndexSet> positions = all_subsets(d, m);
  const long pair_count =
      static_cast<long>(positions.size()) * static_cast<long>(positions.size());
  std::vector<double> deviations(static_cast<size_t>(pair_count), 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long flat = 0; flat < pair_count; ++flat) {
    const IndexSet& rows = positions[static_cast<size_t>(
        flat / static_cast<long>(positions.size()))];
    const IndexSet& cols = positions[static_cast<size_t>(
        flat % static_cast<long>(positions.size()))];
    KahanSum mean_minor;
    for (const auto& [projection, probability] : projections)
      mean_minor.add(probability *
                     determinant(submatrix(projection, rows, cols)));
    const double target = determinant(submatrix(kernel.k, rows, cols));
    deviations[static_cast<size_t>(flat)] =
        std::fabs(mean_minor.value() - target);
  }
  DiscreteTheoremReport report{d, n, m, 0.0};
  for (double dev : deviations)
    report.max_deviation = std::max(report.max_deviation, dev);
  return report;
}

}  // namespace meanproj
