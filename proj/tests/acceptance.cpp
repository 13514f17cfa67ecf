// Acceptance gate: ten end-to-end properties of the library, each printed as
// a single pass/fail line. The binary exits nonzero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "meanproj/cli.hpp"
#include "meanproj/dpp.hpp"
#include "meanproj/estimator.hpp"
#include "meanproj/minor_identities.hpp"
#include "meanproj/stats.hpp"

using namespace meanproj;

namespace {

int failures = 0;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(int number, const std::string& label, bool pass, double seconds,
            const std::string& detail) {
  std::printf("[%s] %2d %-34s (%6.2fs) %s\n", pass ? "PASS" : "FAIL", number,
              label.c_str(), seconds, detail.c_str());
  if (!pass) ++failures;
}

FunctionHandle random_polynomial(RngStream& rng, int degree) {
  std::vector<double> coeffs(static_cast<size_t>(degree) + 1);
  for (auto& c : coeffs) c = 2.0 * rng.next_double() - 1.0;
  return [coeffs](double t) {
    double v = 0.0;
    for (size_t p = coeffs.size(); p-- > 0;) v = v * t + coeffs[p];
    return v;
  };
}

GroundSpace unit_interval(int q = 128) {
  return GroundSpace::interval(-1.0, 1.0, WeightFamily::kLebesgue, q);
}

// 1. 500 exact-arithmetic fuzz trials over the four minor identities.
void criterion_exact_identities() {
  Timer timer;
  FuzzOptions options;
  options.seed = 2024;
  options.trials = 500;
  options.max_n = 6;
  options.parallel = true;
  const auto reports = fuzz_identities(options);
  long failed = 0;
  for (const auto& r : reports)
    if (!r.holds) ++failed;
  const double t = timer.seconds();
  const bool pass = failed == 0 && reports.size() == 2000 && t < 10.0;
  report(1, "exact minor identities, 500 trials", pass, t,
         std::to_string(failed) + " of " + std::to_string(reports.size()) +
             " checks failed");
}

// 2. Gram-determinant wedge inner product vs tensor quadrature.
void criterion_gram_vs_quadrature() {
  Timer timer;
  const GroundSpace space = unit_interval(32);
  RngStream rng(2101, 0);
  double worst = 0.0;
  for (int instance = 0; instance < 50; ++instance) {
    const int m = 2 + instance % 2;
    std::vector<FunctionHandle> gs, hs;
    for (int i = 0; i < m; ++i) {
      gs.push_back(random_polynomial(rng, 5));
      hs.push_back(random_polynomial(rng, 5));
    }
    const double gram = wedge_inner(gs, hs, space);
    const double quad = wedge_inner_quadrature(gs, hs, space);
    const double rel = std::fabs(gram - quad) / std::max(1.0, std::fabs(gram));
    worst = std::max(worst, rel);
  }
  const double t = timer.seconds();
  const bool pass = worst <= 1e-10 && t < 30.0;
  char detail[64];
  std::snprintf(detail, sizeof(detail), "max rel dev %.3e", worst);
  report(2, "wedge Gram vs tensor quadrature", pass, t, detail);
}

// 3. Minor-averaging identity on 10 random finite subspaces, all orders.
void criterion_discrete_theorem() {
  Timer timer;
  RngStream rng(2301, 0);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 5 + trial % 4;
    const int n = 2 + trial % 3;
    Matrix span(d, n);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < n; ++j) span(i, j) = 2.0 * rng.next_double() - 1.0;
    const KernelMatrix kernel = projection_kernel(span);
    for (int m = 1; m <= n; ++m)
      worst = std::max(worst, verify_discrete_theorem(kernel, m).max_deviation);
  }
  const double t = timer.seconds();
  const bool pass = worst <= 1e-10 && t < 60.0;
  char detail[64];
  std::snprintf(detail, sizeof(detail), "max deviation %.3e", worst);
  report(3, "exhaustive minor averaging, d<=8", pass, t, detail);
}

// 4. Monte Carlo first moment of every minor statistic, z in [-4, 4].
void criterion_mean_projection() {
  Timer timer;
  const OrthonormalBasis basis(unit_interval(), 3, BasisFamily::kLegendre);
  const FunctionHandle sq = [](double t) { return t * t; };
  const FunctionHandle ex = [](double t) { return std::exp(t); };
  MonteCarloOptions options;
  options.replicates = 200000;
  options.seed = 2401;
  double worst_z = 0.0;
  for (const auto& fs : std::vector<std::vector<FunctionHandle>>{
           {sq}, {ex}, {sq, ex}}) {
    const MomentReport mr = estimate_mean_minors(
        basis, fs, static_cast<int>(fs.size()), options);
    for (const MomentRow& row : mr.rows)
      worst_z = std::max(worst_z, std::fabs(row.z_score));
  }
  const double t = timer.seconds();
  const bool pass = worst_z <= 4.0 && t < 120.0;
  char detail[64];
  std::snprintf(detail, sizeof(detail), "max |z| %.3f", worst_z);
  report(4, "first moment of minors, N=2e5", pass, t, detail);
}

// 5. Empirical vs closed-form total variance, 5% relative or 4 sigma.
void criterion_variance_formula() {
  Timer timer;
  const OrthonormalBasis basis(unit_interval(), 3, BasisFamily::kLegendre);
  const std::vector<FunctionHandle> fs = {
      [](double t) { return t * t; }, [](double t) { return std::exp(t); }};
  MonteCarloOptions options;
  options.replicates = 200000;
  options.seed = 2501;
  const VarianceReport vr = empirical_variance(basis, fs, 2, options);
  const double gap = std::fabs(vr.empirical_total - vr.closed_form_total);
  const double allowed =
      std::max(0.05 * std::fabs(vr.closed_form_total),
               4.0 * vr.empirical_stderr);
  const double t = timer.seconds();
  const bool pass = gap <= allowed;
  char detail[96];
  std::snprintf(detail, sizeof(detail),
                "empirical %.6f closed %.6f gap %.2e allowed %.2e",
                vr.empirical_total, vr.closed_form_total, gap, allowed);
  report(5, "variance formula, N=2e5", pass, t, detail);
}

// 6. Scalar estimator for f = x^2 in the degree-1 space.
void criterion_scalar_case() {
  Timer timer;
  const OrthonormalBasis basis(unit_interval(), 2, BasisFamily::kLegendre);
  const std::vector<FunctionHandle> fs = {[](double t) { return t * t; }};
  const VarianceReport closed = closed_form_variance(basis, fs, 1);
  const bool closed_ok =
      std::fabs(closed.closed_form_total - 16.0 / 45.0) <= 1e-12;

  MonteCarloOptions options;
  options.replicates = 200000;
  options.seed = 2601;
  const VarianceReport vr = empirical_variance(basis, fs, 1, options);
  const bool empirical_ok =
      std::fabs(vr.empirical_total - 16.0 / 45.0) <= 0.03 * (16.0 / 45.0);

  const MomentReport mr = estimate_mean_minors(basis, fs, 1, options);
  bool means_ok = mr.rows.size() == 2;
  const double targets[2] = {std::sqrt(2.0) / 3.0, 0.0};
  for (size_t i = 0; i < mr.rows.size() && means_ok; ++i) {
    const double dev = std::fabs(mr.rows[i].mean - targets[i]);
    means_ok = dev <= 4.0 * mr.rows[i].stderr_;
  }
  const double t = timer.seconds();
  const bool pass = closed_ok && empirical_ok && means_ok;
  char detail[96];
  std::snprintf(detail, sizeof(detail),
                "closed %.12f empirical %.6f means %s", closed.closed_form_total,
                vr.empirical_total, means_ok ? "ok" : "off");
  report(6, "scalar case f=x^2, n=2", pass, t, detail);
}

// 7. Second-moment oracle sum minus projected norm equals the closed form.
void criterion_variance_consistency() {
  Timer timer;
  RngStream rng(2701, 0);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + trial % 3;
    const int m = 1 + trial % 3;
    const OrthonormalBasis basis(unit_interval(), n, BasisFamily::kLegendre);
    std::vector<FunctionHandle> fs;
    for (int i = 0; i < m; ++i) fs.push_back(random_polynomial(rng, 4));
    const VarianceReport vr = closed_form_variance(basis, fs, m);
    double second_moment_sum = 0.0;
    for (const auto& [subset, value] : vr.per_subset_second_moment)
      second_moment_sum += value;
    std::vector<FunctionHandle> projected;
    for (const auto& f : fs) projected.push_back(basis.project_h(f));
    const double mean_norm_sq = wedge_inner(projected, projected, basis.space());
    worst = std::max(worst, std::fabs(second_moment_sum - mean_norm_sq -
                                      vr.closed_form_total));
  }
  const double t = timer.seconds();
  const bool pass = worst <= 1e-9;
  char detail[64];
  std::snprintf(detail, sizeof(detail), "max deviation %.3e", worst);
  report(7, "deterministic variance consistency", pass, t, detail);
}

// 8. D_t wedge equals the grade-weighted sum at random point tuples.
void criterion_graded_identity() {
  Timer timer;
  const OrthonormalBasis basis(unit_interval(), 3, BasisFamily::kLegendre);
  RngStream rng(2801, 0);
  double worst = 0.0;
  for (int tuple = 0; tuple < 20; ++tuple) {
    const int m = 1 + tuple % 3;
    std::vector<FunctionHandle> fs;
    for (int i = 0; i < m; ++i) fs.push_back(random_polynomial(rng, 4));
    std::vector<double> ys;
    for (int i = 0; i < m; ++i) ys.push_back(2.0 * rng.next_double() - 1.0);
    std::vector<GradedWedge> grades;
    for (int k = 0; k <= m; ++k) grades.push_back(graded_project(basis, fs, k));
    for (double t_val : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
      std::vector<FunctionHandle> dt;
      for (const auto& f : fs) dt.push_back(basis.apply_dt(f, t_val));
      const double direct = wedge_eval(dt, ys);
      double graded = 0.0;
      double power = 1.0;
      for (int k = 0; k <= m; ++k) {
        graded += power * grades[static_cast<size_t>(k)].evaluate(ys);
        power *= t_val;
      }
      worst = std::max(worst, std::fabs(direct - graded) /
                                  (1.0 + std::fabs(direct)));
    }
  }
  const double t = timer.seconds();
  const bool pass = worst <= 1e-9;
  char detail[64];
  std::snprintf(detail, sizeof(detail), "max scaled deviation %.3e", worst);
  report(8, "graded splitting of D_t wedges", pass, t, detail);
}

// 9. Chi-squared law checks for the discrete and the continuous sampler.
void criterion_sampler_law() {
  Timer timer;
  const double third = 1.0 / std::sqrt(3.0);
  const KernelMatrix rank_one =
      projection_kernel(Matrix(3, 1, {third, third, third}));
  std::vector<double> counts(3, 0.0);
  const int discrete_draws = 30000;
  for (int r = 0; r < discrete_draws; ++r) {
    RngStream rng(2901, static_cast<std::uint64_t>(r));
    counts[static_cast<size_t>(sample_discrete(rank_one, rng)[0] - 1)] += 1.0;
  }
  std::vector<double> expected_counts;
  for (const auto& [subset, probability] : enumerate_discrete(rank_one))
    expected_counts.push_back(probability * discrete_draws);
  const double p_discrete = chi_squared_pvalue(
      chi_squared_statistic(counts, expected_counts), 2);

  const int n = 3;
  const OrthonormalBasis basis(unit_interval(), n, BasisFamily::kLegendre);
  const ContinuousSampler sampler(basis);
  const int bins = 40;
  const int draws = 50000;
  std::vector<double> observed(bins, 0.0);
  for (int r = 0; r < draws; ++r) {
    RngStream rng(2902, static_cast<std::uint64_t>(r));
    for (double p : sampler.sample(rng).points) {
      int bin = std::min(static_cast<int>((p + 1.0) / 2.0 * bins), bins - 1);
      observed[static_cast<size_t>(bin)] += 1.0;
    }
  }
  const GroundSpace& s = basis.space();
  std::vector<double> expected(bins, 0.0);
  for (int a = 0; a < s.node_count(); ++a) {
    const double x = s.nodes()[static_cast<size_t>(a)];
    double intensity = 0.0;
    for (int j = 1; j <= n; ++j)
      intensity += basis.evaluate(j, x) * basis.evaluate(j, x);
    const int bin = std::min(static_cast<int>((x + 1.0) / 2.0 * bins), bins - 1);
    expected[static_cast<size_t>(bin)] +=
        s.weights()[static_cast<size_t>(a)] * intensity * draws;
  }
  const double p_continuous =
      chi_squared_pvalue(chi_squared_statistic(observed, expected), bins - 1);

  const double t = timer.seconds();
  const bool pass = p_discrete > 0.001 && p_continuous > 0.001;
  char detail[64];
  std::snprintf(detail, sizeof(detail), "p=%.4f (discrete), p=%.4f (1-point)",
                p_discrete, p_continuous);
  report(9, "sampler law chi-squared", pass, t, detail);
}

// 10. Functions inside H are reproduced exactly, sample by sample.
void criterion_h_reproduction() {
  Timer timer;
  const OrthonormalBasis basis(unit_interval(), 3, BasisFamily::kLegendre);
  const std::vector<FunctionHandle> fs = {
      [&basis](double t) {
        return basis.evaluate(1, t) - 0.5 * basis.evaluate(3, t);
      },
      [&basis](double t) {
        return 2.0 * basis.evaluate(2, t) + basis.evaluate(3, t);
      }};
  const WedgeCoefficients targets = target_minors(basis, fs, 2);
  const ContinuousSampler sampler(basis);
  double worst = 0.0;
  for (int r = 0; r < 1000; ++r) {
    RngStream rng(3001, static_cast<std::uint64_t>(r));
    const WedgeCoefficients minors =
        minor_statistics(basis, sampler.sample(rng), fs, 2);
    for (const auto& [subset, value] : minors.coefficients)
      worst = std::max(worst,
                       std::fabs(value - targets.coefficients.at(subset)));
  }
  MonteCarloOptions options;
  options.replicates = 1000;
  options.seed = 3001;
  const VarianceReport vr = empirical_variance(basis, fs, 2, options);
  const double t = timer.seconds();
  const bool pass = worst <= 1e-10 && vr.empirical_total <= 1e-18;
  char detail[80];
  std::snprintf(detail, sizeof(detail),
                "max minor dev %.3e, empirical var %.3e", worst,
                vr.empirical_total);
  report(10, "exact reproduction inside H", pass, t, detail);
}

}  // namespace

int main() {
  criterion_exact_identities();
  criterion_gram_vs_quadrature();
  criterion_discrete_theorem();
  criterion_mean_projection();
  criterion_variance_formula();
  criterion_scalar_case();
  criterion_variance_consistency();
  criterion_graded_identity();
  criterion_sampler_law();
  criterion_h_reproduction();
  if (failures == 0) {
    std::printf("acceptance: all 10 checks passed\n");
    return 0;
  }
  std::printf("acceptance: %d check(s) failed\n", failures);
  return 1;
}
