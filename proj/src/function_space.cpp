#include "meanproj/function_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "meanproj/stats.hpp"

namespace meanproj {

// ---------------------------------------------------------------------------
// Gauss rules

void gauss_legendre(int q, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(static_cast<size_t>(q), 0.0);
  weights.assign(static_cast<size_t>(q), 0.0);
  const int half = (q + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (q + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= q; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = q * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    nodes[static_cast<size_t>(i)] = -z;
    nodes[static_cast<size_t>(q - 1 - i)] = z;
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    weights[static_cast<size_t>(i)] = w;
    weights[static_cast<size_t>(q - 1 - i)] = w;
  }
}

void gauss_hermite(int q, std::vector<double>& nodes,
                   std::vector<double>& weights) {
  nodes.assign(static_cast<size_t>(q), 0.0);
  weights.assign(static_cast<size_t>(q), 0.0);
  const double pim4 = 0.7511255444649425;  // pi^(-1/4)
  const int half = (q + 1) / 2;
  double z = 0.0, z_prev = 0.0, z_prev2 = 0.0;
  for (int i = 0; i < half; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * q + 1.0) -
          1.85575 * std::pow(2.0 * q + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(q), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * z_prev2;
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * z_prev2;
    } else {
      z = 2.0 * z - z_prev2;
    }
    double pp = 0.0;
    for (int it = 0; it < 200; ++it) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 1; j <= q; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * q) * p2;
      const double dz = p1 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-14) break;
    }
    z_prev2 = z_prev;
    z_prev = z;
    nodes[static_cast<size_t>(q - 1 - i)] = z;
    nodes[static_cast<size_t>(i)] = -z;
    const double w = 2.0 / (pp * pp);
    weights[static_cast<size_t>(i)] = w;
    weights[static_cast<size_t>(q - 1 - i)] = w;
  }
  if (q % 2 == 1) nodes[static_cast<size_t>(q / 2)] = 0.0;
}

void gauss_chebyshev(int q, std::vector<double>& nodes,
                     std::vector<double>& weights) {
  nodes.assign(static_cast<size_t>(q), 0.0);
  weights.assign(static_cast<size_t>(q), M_PI / q);
  for (int k = 0; k < q; ++k)
    nodes[static_cast<size_t>(q - 1 - k)] =
        std::cos(M_PI * (2.0 * k + 1.0) / (2.0 * q));
}

// ---------------------------------------------------------------------------
// GroundSpace

GroundSpace GroundSpace::interval(double a, double b, WeightFamily weight,
                                  int quadrature_size) {
  if (quadrature_size < 1)
    throw parameter_error("GroundSpace: quadrature size must be >= 1");
  if (weight != WeightFamily::kGaussian && !(a < b))
    throw parameter_error("GroundSpace: requires a < b");
  GroundSpace s;
  s.kind_ = Kind::kInterval;
  s.weight_ = weight;
  s.a_ = a;
  s.b_ = b;
  switch (weight) {
    case WeightFamily::kLebesgue: {
      gauss_legendre(quadrature_size, s.nodes_, s.weights_);
      const double mid = 0.5 * (a + b), scale = 0.5 * (b - a);
      for (auto& x : s.nodes_) x = mid + scale * x;
      for (auto& w : s.weights_) w *= scale;
      break;
    }
    case WeightFamily::kChebyshev: {
      if (a != -1.0 || b != 1.0)
        throw parameter_error("GroundSpace: Chebyshev weight is on [-1,1]");
      gauss_chebyshev(quadrature_size, s.nodes_, s.weights_);
      break;
    }
    case WeightFamily::kGaussian: {
      // weight exp(-x^2) on the whole line; endpoints unused
      gauss_hermite(quadrature_size, s.nodes_, s.weights_);
      s.a_ = s.nodes_.front();
      s.b_ = s.nodes_.back();
      break;
    }
  }
  for (size_t i = 0; i < s.nodes_.size(); ++i) {
    if (s.weights_[i] <= 0.0)
      throw parameter_error("GroundSpace: nonpositive quadrature weight");
    if (i > 0 && s.nodes_[i] <= s.nodes_[i - 1])
      throw parameter_error("GroundSpace: nodes not strictly increasing");
  }
  return s;
}

GroundSpace GroundSpace::discrete(std::vector<double> atoms,
                                  std::vector<double> weights) {
  if (atoms.empty() || atoms.size() != weights.size())
    throw parameter_error("GroundSpace: atom/weight size mismatch");
  std::vector<size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t x, size_t y) { return atoms[x] < atoms[y]; });
  GroundSpace s;
  s.kind_ = Kind::kDiscrete;
  for (size_t k : order) {
    if (weights[k] <= 0.0)
      throw parameter_error("GroundSpace: nonpositive atom weight");
    if (!s.nodes_.empty() && atoms[k] <= s.nodes_.back())
      throw parameter_error("GroundSpace: atoms must be distinct");
    s.nodes_.push_back(atoms[k]);
    s.weights_.push_back(weights[k]);
  }
  s.a_ = s.nodes_.front();
  s.b_ = s.nodes_.back();
  return s;
}

double GroundSpace::total_mass() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

double GroundSpace::integral(const FunctionHandle& f) const {
  KahanSum sum;
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const double v = f(nodes_[i]);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "integral: non-finite value at node x=" << nodes_[i];
      throw evaluation_error(os.str());
    }
    sum.add(weights_[i] * v);
  }
  return sum.value();
}

double GroundSpace::inner(const FunctionHandle& f,
                          const FunctionHandle& g) const {
  KahanSum sum;
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const double fv = f(nodes_[i]);
    const double gv = g(nodes_[i]);
    if (!std::isfinite(fv) || !std::isfinite(gv)) {
      std::ostringstream os;
      os << "inner: non-finite value at node x=" << nodes_[i];
      throw evaluation_error(os.str());
    }
    sum.add(weights_[i] * fv * gv);
  }
  return sum.value();
}

// ---------------------------------------------------------------------------
// OrthonormalBasis

BasisFamily basis_family_from_name(const std::string& name) {
  if (name == "legendre") return BasisFamily::kLegendre;
  if (name == "chebyshev") return BasisFamily::kChebyshev;
  if (name == "hermite") return BasisFamily::kHermite;
  if (name == "fourier") return BasisFamily::kFourier;
  if (name == "gram_schmidt_custom") return BasisFamily::kGramSchmidtCustom;
  if (name == "discrete_coordinate") return BasisFamily::kDiscreteCoordinate;
  throw parameter_error("unknown basis family: " + name);
}

std::string basis_family_name(BasisFamily family) {
  switch (family) {
    case BasisFamily::kLegendre: return "legendre";
    case BasisFamily::kChebyshev: return "chebyshev";
    case BasisFamily::kHermite: return "hermite";
    case BasisFamily::kFourier: return "fourier";
    case BasisFamily::kGramSchmidtCustom: return "gram_schmidt_custom";
    case BasisFamily::kDiscreteCoordinate: return "discrete_coordinate";
  }
  throw parameter_error("unknown basis family");
}

namespace {

double legendre_poly(int degree, double u) {
  double p1 = 1.0, p2 = 0.0;
  for (int j = 1; j <= degree; ++j) {
    const double p3 = p2;
    p2 = p1;
    p1 = ((2.0 * j - 1.0) * u * p2 - (j - 1.0) * p3) / j;
  }
  return p1;
}

// Orthonormal Hermite functions without the Gaussian factor:
// h_k / sqrt(sqrt(pi) 2^k k!), evaluated by the normalized recurrence.
double hermite_orthonormal(int degree, double x) {
  double p1 = 0.7511255444649425, p2 = 0.0;  // pi^(-1/4)
  for (int j = 1; j <= degree; ++j) {
    const double p3 = p2;
    p2 = p1;
    p1 = x * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
  }
  return p1;
}

}  // namespace

OrthonormalBasis::OrthonormalBasis(GroundSpace space, int n,
                                   BasisFamily family)
    : space_(std::move(space)), n_(n), family_(family) {
  if (n < 1) throw parameter_error("OrthonormalBasis: n must be >= 1");
  const GroundSpace& s = space_;
  switch (family) {
    case BasisFamily::kLegendre: {
      if (s.kind() != GroundSpace::Kind::kInterval ||
          s.weight() != WeightFamily::kLebesgue)
        throw parameter_error("legendre basis needs a Lebesgue interval");
      const double a = s.a(), b = s.b();
      for (int j = 1; j <= n; ++j) {
        const double norm = std::sqrt((2.0 * j - 1.0) / (b - a));
        functions_.push_back([a, b, j, norm](double x) {
          const double u = 2.0 * (x - a) / (b - a) - 1.0;
          return norm * legendre_poly(j - 1, u);
        });
      }
      break;
    }
    case BasisFamily::kChebyshev: {
      if (s.weight() != WeightFamily::kChebyshev)
        throw parameter_error("chebyshev basis needs the Chebyshev weight");
      for (int j = 1; j <= n; ++j) {
        const double norm =
            (j == 1) ? 1.0 / std::sqrt(M_PI) : std::sqrt(2.0 / M_PI);
        functions_.push_back([j, norm](double x) {
          return norm * std::cos((j - 1) * std::acos(std::clamp(x, -1.0, 1.0)));
        });
      }
      break;
    }
    case BasisFamily::kHermite: {
      if (s.weight() != WeightFamily::kGaussian)
        throw parameter_error("hermite basis needs the Gaussian weight");
      for (int j = 1; j <= n; ++j)
        functions_.push_back(
            [j](double x) { return hermite_orthonormal(j - 1, x); });
      break;
    }
    case BasisFamily::kFourier: {
      if (s.kind() != GroundSpace::Kind::kInterval ||
          s.weight() != WeightFamily::kLebesgue)
        throw parameter_error("fourier basis needs a Lebesgue interval");
      const double a = s.a(), len = s.b() - s.a();
      for (int j = 1; j <= n; ++j) {
        if (j == 1) {
          const double c = 1.0 / std::sqrt(len);
          functions_.push_back([c](double) { return c; });
        } else {
          const int freq = j / 2;
          const bool is_cos = (j % 2 == 0);
          const double c = std::sqrt(2.0 / len);
          functions_.push_back([a, len, freq, is_cos, c](double x) {
            const double angle = 2.0 * M_PI * freq * (x - a) / len;
            return c * (is_cos ? std::cos(angle) : std::sin(angle));
          });
        }
      }
      break;
    }
    case BasisFamily::kDiscreteCoordinate: {
      if (s.kind() != GroundSpace::Kind::kDiscrete)
        throw parameter_error("coordinate basis needs a discrete space");
      if (n > s.node_count())
        throw parameter_error("coordinate basis: n exceeds atom count");
      for (int j = 1; j <= n; ++j) {
        const double atom = s.nodes()[static_cast<size_t>(j - 1)];
        const double norm =
            1.0 / std::sqrt(s.weights()[static_cast<size_t>(j - 1)]);
        functions_.push_back(
            [atom, norm](double x) { return x == atom ? norm : 0.0; });
      }
      break;
    }
    case BasisFamily::kGramSchmidtCustom:
      throw parameter_error("custom basis requires explicit seed functions");
  }
  verify_gram();
}

OrthonormalBasis::OrthonormalBasis(GroundSpace space,
                                   std::vector<FunctionHandle> seeds)
    : space_(std::move(space)), n_(static_cast<int>(seeds.size())),
      family_(BasisFamily::kGramSchmidtCustom) {
  if (seeds.empty()) throw parameter_error("custom basis: no seed functions");
  // Gram-Schmidt in seed-coefficient space against the seed Gram matrix.
  const int n = n_;
  Matrix seed_gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      seed_gram(i, j) = space_.inner(seeds[static_cast<size_t>(i)],
                                     seeds[static_cast<size_t>(j)]);
  auto pair_inner = [&](const std::vector<double>& u,
                        const std::vector<double>& v) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        sum += u[static_cast<size_t>(i)] * seed_gram(i, j) *
               v[static_cast<size_t>(j)];
    return sum;
  };
  const double leading_norm = std::sqrt(std::max(seed_gram(0, 0), 0.0));
  std::vector<std::vector<double>> coeffs;
  for (int j = 0; j < n; ++j) {
    std::vector<double> c(static_cast<size_t>(n), 0.0);
    c[static_cast<size_t>(j)] = 1.0;
    for (int pass = 0; pass < 2; ++pass)  // one reorthogonalization pass
      for (const auto& prev : coeffs) {
        const double overlap = pair_inner(prev, c);
        for (int i = 0; i < n; ++i)
          c[static_cast<size_t>(i)] -= overlap * prev[static_cast<size_t>(i)];
      }
    const double norm = std::sqrt(std::max(pair_inner(c, c), 0.0));
    if (norm < 1e-10 * leading_norm)
      throw rank_error("custom basis: numerically dependent seed functions");
    for (auto& v : c) v /= norm;
    coeffs.push_back(std::move(c));
  }
  auto shared_seeds =
      std::make_shared<std::vector<FunctionHandle>>(std::move(seeds));
  for (int j = 0; j < n; ++j) {
    auto c = std::make_shared<std::vector<double>>(
        std::move(coeffs[static_cast<size_t>(j)]));
    functions_.push_back([shared_seeds, c](double x) {
      double v = 0.0;
      for (size_t k = 0; k < c->size(); ++k)
        v += (*c)[k] * (*shared_seeds)[k](x);
      return v;
    });
  }
  verify_gram();
}

double OrthonormalBasis::evaluate(int j, double x) const {
  if (j < 1 || j > n_) throw dimension_error("basis index out of range");
  return functions_[static_cast<size_t>(j - 1)](x);
}

FunctionHandle OrthonormalBasis::basis_function(int j) const {
  if (j < 1 || j > n_) throw dimension_error("basis index out of range");
  return functions_[static_cast<size_t>(j - 1)];
}

std::vector<double> OrthonormalBasis::projection_coefficients(
    const FunctionHandle& f) const {
  std::vector<double> out(static_cast<size_t>(n_));
  for (int j = 1; j <= n_; ++j)
    out[static_cast<size_t>(j - 1)] =
        space_.inner(functions_[static_cast<size_t>(j - 1)], f);
  return out;
}

FunctionHandle OrthonormalBasis::project_h(const FunctionHandle& f) const {
  auto coeffs =
      std::make_shared<std::vector<double>>(projection_coefficients(f));
  auto functions =
      std::make_shared<std::vector<FunctionHandle>>(functions_);
  return [coeffs, functions](double x) {
    double v = 0.0;
    for (size_t j = 0; j < coeffs->size(); ++j)
      v += (*coeffs)[j] * (*functions)[j](x);
    return v;
  };
}

FunctionHandle OrthonormalBasis::project_h_perp(
    const FunctionHandle& f) const {
  // Kept as the closure f - P_H f; exact at any evaluation point.
  FunctionHandle ph = project_h(f);
  return [f, ph](double x) { return f(x) - ph(x); };
}

FunctionHandle OrthonormalBasis::apply_dt(const FunctionHandle& f,
                                          double t) const {
  FunctionHandle ph = project_h(f);
  return [f, ph, t](double x) {
    const double h_part = ph(x);
    return h_part + t * (f(x) - h_part);
  };
}

double OrthonormalBasis::gram_deviation() const {
  double deviation = 0.0;
  for (int i = 1; i <= n_; ++i)
    for (int j = i; j <= n_; ++j) {
      const double entry = space_.inner(functions_[static_cast<size_t>(i - 1)],
                                        functions_[static_cast<size_t>(j - 1)]);
      deviation = std::max(deviation,
                           std::fabs(entry - (i == j ? 1.0 : 0.0)));
    }
  return deviation;
}

void OrthonormalBasis::verify_gram() const {
  const double deviation = gram_deviation();
  if (deviation > 1e-10) {
    std::ostringstream os;
    os << "basis Gram matrix deviates from identity by " << deviation;
    throw parameter_error(os.str());
  }
}

// ---------------------------------------------------------------------------
// Wedges

double wedge_eval(const std::vector<FunctionHandle>& fs,
                  const std::vector<double>& ys) {
  const int m = static_cast<int>(fs.size());
  if (m < 1 || ys.size() != fs.size())
    throw dimension_error("wedge_eval: need equal positive counts");
  std::vector<double> entries(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double v = fs[static_cast<size_t>(j)](ys[static_cast<size_t>(i)]);
      if (!std::isfinite(v))
        throw evaluation_error("wedge_eval: non-finite function value");
      entries[static_cast<size_t>(i) * m + j] = v;
    }
  return determinant(Matrix(m, m, std::move(entries)));
}

double wedge_inner(const std::vector<FunctionHandle>& gs,
                   const std::vector<FunctionHandle>& hs,
                   const GroundSpace& space) {
  const int m = static_cast<int>(gs.size());
  if (m < 1 || hs.size() != gs.size())
    throw dimension_error("wedge_inner: order mismatch");
  Matrix gram(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      gram(i, j) = space.inner(gs[static_cast<size_t>(i)],
                               hs[static_cast<size_t>(j)]);
  return determinant(gram);
}

double wedge_inner_quadrature(const std::vector<FunctionHandle>& gs,
                              const std::vector<FunctionHandle>& hs,
                              const GroundSpace& space) {
  const int m = static_cast<int>(gs.size());
  if (m < 1 || hs.size() != gs.size())
    throw dimension_error("wedge_inner_quadrature: order mismatch");
  if (m > 3)
    throw dimension_error("wedge_inner_quadrature: tensor path limited to m <= 3");
  const int q = space.node_count();
  // cache all function values on the grid
  auto tabulate = [&](const std::vector<FunctionHandle>& fs) {
    std::vector<std::vector<double>> table(fs.size());
    for (size_t f = 0; f < fs.size(); ++f) {
      table[f].resize(static_cast<size_t>(q));
      for (int a = 0; a < q; ++a)
        table[f][static_cast<size_t>(a)] =
            fs[f](space.nodes()[static_cast<size_t>(a)]);
    }
    return table;
  };
  const auto gt = tabulate(gs);
  const auto ht = tabulate(hs);
  auto det_at = [&](const std::vector<std::vector<double>>& table,
                    const int* idx) {
    if (m == 1) return table[0][static_cast<size_t>(idx[0])];
    if (m == 2)
      return table[0][static_cast<size_t>(idx[0])] *
                 table[1][static_cast<size_t>(idx[1])] -
             table[1][static_cast<size_t>(idx[0])] *
                 table[0][static_cast<size_t>(idx[1])];
    const auto e = [&](int i, int j) {
      return table[static_cast<size_t>(j)][static_cast<size_t>(idx[i])];
    };
    return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
           e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
           e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
  };
  double factorial = 1.0;
  for (int i = 2; i <= m; ++i) factorial *= i;
  KahanSum sum;
  int idx[3] = {0, 0, 0};
  const long total = static_cast<long>(std::pow(q, m));
  for (long flat = 0; flat < total; ++flat) {
    long rest = flat;
    double wprod = 1.0;
    for (int p = 0; p < m; ++p) {
      idx[p] = static_cast<int>(rest % q);
      rest /= q;
      wprod *= space.weights()[static_cast<size_t>(idx[p])];
    }
    sum.add(wprod * det_at(gt, idx) * det_at(ht, idx));
  }
  return sum.value() / factorial;
}

double GradedWedge::evaluate(const std::vector<double>& ys) const {
  double value = 0.0;
  for (const auto& term : terms) value += wedge_eval(term.factors, ys);
  return value;
}

GradedWedge graded_project(const OrthonormalBasis& basis,
                           const std::vector<FunctionHandle>& fs, int k) {
  const int m = static_cast<int>(fs.size());
  if (k < 0 || k > m)
    throw dimension_error("graded_project: grade out of [0, m]");
  std::vector<FunctionHandle> h_parts, h_perp_parts;
  for (const auto& f : fs) {
    h_parts.push_back(basis.project_h(f));
    h_perp_parts.push_back(basis.project_h_perp(f));
  }
  GradedWedge out;
  out.order = m;
  out.grade = k;
  for (const IndexSet& b : all_subsets(m, k)) {
    WedgeTerm term;
    term.in_h_perp.assign(static_cast<size_t>(m), false);
    for (int p = 1; p <= m; ++p) {
      const bool perp = b.contains(p);
      term.in_h_perp[static_cast<size_t>(p - 1)] = perp;
      term.factors.push_back(perp ? h_perp_parts[static_cast<size_t>(p - 1)]
                                  : h_parts[static_cast<size_t>(p - 1)]);
    }
    out.terms.push_back(std::move(term));
  }
  return out;
}

double graded_pairing(const GradedWedge& lhs, const GradedWedge& rhs,
                      const GroundSpace& space) {
  if (lhs.order != rhs.order)
    throw dimension_error("graded_pairing: order mismatch");
  KahanSum sum;
  for (const auto& a : lhs.terms)
    for (const auto& b : rhs.terms)
      sum.add(wedge_inner(a.factors, b.factors, space));
  return sum.value();
}

double pi_k_norm_sq(const OrthonormalBasis& basis,
                    const std::vector<FunctionHandle>& fs, int k) {
  const GradedWedge component = graded_project(basis, fs, k);
  return graded_pairing(component, component, basis.space());
}

}  // namespace meanproj
