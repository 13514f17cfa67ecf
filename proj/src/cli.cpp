#include "meanproj/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "meanproj/dpp.hpp"
#include "meanproj/minor_identities.hpp"

namespace meanproj {

namespace {

using nlohmann::json;

SpaceSpec parse_space(const json& j) {
  SpaceSpec spec;
  spec.kind = j.value("kind", "interval");
  if (spec.kind == "interval") {
    spec.a = j.value("a", -1.0);
    spec.b = j.value("b", 1.0);
    spec.weight = j.value("weight", "lebesgue");
    spec.quadrature = j.value("quadrature", 128);
  } else if (spec.kind == "discrete") {
    spec.atoms = j.at("atoms").get<std::vector<double>>();
    if (j.contains("weights"))
      spec.atom_weights = j.at("weights").get<std::vector<double>>();
    else
      spec.atom_weights.assign(spec.atoms.size(), 1.0);
  } else {
    throw parameter_error("config: unknown space kind " + spec.kind);
  }
  return spec;
}

FunctionSpec parse_function(const json& j) {
  FunctionSpec spec;
  spec.name = j.at("name").get<std::string>();
  if (spec.name == "monomial") spec.k = j.at("k").get<int>();
  if (spec.name == "coefficients")
    spec.values = j.at("values").get<std::vector<double>>();
  return spec;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw parameter_error(std::string("config: invalid JSON: ") + e.what());
  }
  ExperimentConfig config;
  config.mode = j.value("mode", "");
  if (j.contains("space")) config.space = parse_space(j.at("space"));
  if (j.contains("basis")) {
    config.family = j.at("basis").value("family", "legendre");
    config.n = j.at("basis").value("n", 3);
  }
  if (j.contains("functions"))
    for (const auto& f : j.at("functions"))
      config.functions.push_back(parse_function(f));
  config.m = j.value("m", 1);
  config.replicates = j.value("replicates", 1000L);
  config.seed = j.value("seed", std::uint64_t{0});
  config.out_dir = j.value("out", ".");
  config.parallel = j.value("parallel", true);
  config.max_n = j.value("max_n", 6);
  config.d = j.value("d", 6);
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parameter_error("config: cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string serialize_config(const ExperimentConfig& config) {
  nlohmann::ordered_json j;
  j["mode"] = config.mode;
  if (config.space.kind == "interval") {
    j["space"] = {{"kind", "interval"},
                  {"a", config.space.a},
                  {"b", config.space.b},
                  {"weight", config.space.weight},
                  {"quadrature", config.space.quadrature}};
  } else {
    j["space"] = {{"kind", "discrete"},
                  {"atoms", config.space.atoms},
                  {"weights", config.space.atom_weights}};
  }
  j["basis"] = {{"family", config.family}, {"n", config.n}};
  nlohmann::ordered_json fns = nlohmann::ordered_json::array();
  for (const auto& f : config.functions) {
    nlohmann::ordered_json fj;
    fj["name"] = f.name;
    if (f.name == "monomial") fj["k"] = f.k;
    if (f.name == "coefficients") fj["values"] = f.values;
    fns.push_back(fj);
  }
  j["functions"] = fns;
  j["m"] = config.m;
  j["replicates"] = config.replicates;
  j["seed"] = config.seed;
  j["out"] = config.out_dir;
  j["parallel"] = config.parallel;
  j["max_n"] = config.max_n;
  j["d"] = config.d;
  return j.dump(2);
}

void validate_config(const ExperimentConfig& config) {
  static const std::vector<std::string> kModes = {"sample", "mean", "variance",
                                                  "identities", "discrete"};
  bool known_mode = false;
  for (const auto& mode : kModes) known_mode = known_mode || mode == config.mode;
  if (!known_mode)
    throw parameter_error("config: unknown mode '" + config.mode + "'");
  if (config.replicates < 1)
    throw parameter_error("config: replicates must be >= 1");
  if (config.mode == "mean" || config.mode == "variance") {
    if (config.m < 1 || config.m > config.n)
      throw parameter_error("config: need 1 <= m <= n");
    if (static_cast<int>(config.functions.size()) != config.m)
      throw parameter_error("config: need exactly m test functions");
  }
  for (const auto& f : config.functions)
    if (f.name != "monomial" && f.name != "exp" && f.name != "runge" &&
        f.name != "coefficients")
      throw parameter_error("config: unknown function '" + f.name + "'");
}

GroundSpace build_space(const SpaceSpec& spec) {
  if (spec.kind == "discrete")
    return GroundSpace::discrete(spec.atoms, spec.atom_weights);
  WeightFamily weight;
  if (spec.weight == "lebesgue")
    weight = WeightFamily::kLebesgue;
  else if (spec.weight == "chebyshev")
    weight = WeightFamily::kChebyshev;
  else if (spec.weight == "gaussian")
    weight = WeightFamily::kGaussian;
  else
    throw parameter_error("config: unknown weight '" + spec.weight + "'");
  return GroundSpace::interval(spec.a, spec.b, weight, spec.quadrature);
}

OrthonormalBasis build_basis(const ExperimentConfig& config) {
  return OrthonormalBasis(build_space(config.space), config.n,
                          basis_family_from_name(config.family));
}

std::vector<FunctionHandle> build_functions(const ExperimentConfig& config,
                                            const OrthonormalBasis& basis) {
  std::vector<FunctionHandle> out;
  for (const auto& spec : config.functions) {
    if (spec.name == "monomial") {
      const int k = spec.k;
      out.push_back([k](double x) { return std::pow(x, k); });
    } else if (spec.name == "exp") {
      out.push_back([](double x) { return std::exp(x); });
    } else if (spec.name == "runge") {
      out.push_back([](double x) { return 1.0 / (1.0 + 25.0 * x * x); });
    } else if (spec.name == "coefficients") {
      std::vector<FunctionHandle> phis;
      for (size_t j = 0; j < spec.values.size(); ++j)
        phis.push_back(basis.basis_function(static_cast<int>(j) + 1));
      const std::vector<double> values = spec.values;
      out.push_back([phis, values](double x) {
        double v = 0.0;
        for (size_t j = 0; j < values.size(); ++j) v += values[j] * phis[j](x);
        return v;
      });
    } else {
      throw parameter_error("config: unknown function '" + spec.name + "'");
    }
  }
  return out;
}

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open " + path);
  out << content;
  if (!out) throw std::ios_base::failure("write failed for " + path);
}

std::string json_line_end() { return "\n"; }

int run_sample(const ExperimentConfig& config) {
  const OrthonormalBasis basis = build_basis(config);
  const ContinuousSampler sampler(basis);
  std::ostringstream js, csv;
  csv << "replicate";
  for (int i = 1; i <= config.n; ++i) csv << ",x" << i;
  csv << ",log_density\n";
  for (long r = 0; r < config.replicates; ++r) {
    RngStream rng(config.seed, static_cast<std::uint64_t>(r));
    const PointConfiguration x = sampler.sample(rng);
    const double logd = log_density(basis, x);
    js << "{\"replicate\": " << r << ", \"points\": [";
    csv << r;
    for (size_t i = 0; i < x.points.size(); ++i) {
      if (i) js << ", ";
      js << format_double(x.points[i]);
      csv << ',' << format_double(x.points[i]);
    }
    js << "], \"log_density\": " << format_double(logd) << "}"
       << json_line_end();
    csv << ',' << format_double(logd) << '\n';
  }
  write_file(config.out_dir + "/report.json", js.str());
  write_file(config.out_dir + "/report.csv", csv.str());
  return kExitOk;
}

int run_mean(const ExperimentConfig& config) {
  const OrthonormalBasis basis = build_basis(config);
  const std::vector<FunctionHandle> fs = build_functions(config, basis);
  MonteCarloOptions options;
  options.replicates = config.replicates;
  options.seed = config.seed;
  options.policy =
      config.parallel ? ExecPolicy::kParallel : ExecPolicy::kSerial;
  const MomentReport report =
      estimate_mean_minors(basis, fs, config.m, options);

  std::ostringstream js, csv;
  js << "{\"mode\": \"mean\", \"replicates\": " << report.replicates
     << ", \"seed\": " << report.seed
     << ", \"degenerate_redraws\": " << report.degenerate_redraws
     << ", \"rows\": [" << json_line_end();
  csv << "subset,mean,variance,stderr,target,z_score\n";
  for (size_t i = 0; i < report.rows.size(); ++i) {
    const MomentRow& row = report.rows[i];
    js << "  {\"subset\": \"" << row.subset.to_string()
       << "\", \"mean\": " << format_double(row.mean)
       << ", \"variance\": " << format_double(row.variance)
       << ", \"stderr\": " << format_double(row.stderr_)
       << ", \"target\": " << format_double(row.target)
       << ", \"z_score\": " << format_double(row.z_score) << "}"
       << (i + 1 < report.rows.size() ? "," : "") << json_line_end();
    csv << row.subset.to_string() << ',' << format_double(row.mean) << ','
        << format_double(row.variance) << ',' << format_double(row.stderr_)
        << ',' << format_double(row.target) << ','
        << format_double(row.z_score) << '\n';
  }
  js << "]}" << json_line_end();
  write_file(config.out_dir + "/report.json", js.str());
  write_file(config.out_dir + "/report.csv", csv.str());
  return kExitOk;
}

int run_variance(const ExperimentConfig& config) {
  const OrthonormalBasis basis = build_basis(config);
  const std::vector<FunctionHandle> fs = build_functions(config, basis);
  MonteCarloOptions options;
  options.replicates = config.replicates;
  options.seed = config.seed;
  options.policy =
      config.parallel ? ExecPolicy::kParallel : ExecPolicy::kSerial;
  const VarianceReport report =
      empirical_variance(basis, fs, config.m, options);

  std::ostringstream js, csv;
  js << "{\"mode\": \"variance\", \"replicates\": " << report.replicates
     << ", \"seed\": " << report.seed
     << ", \"degenerate_redraws\": " << report.degenerate_redraws
     << ", \"empirical_total\": " << format_double(report.empirical_total)
     << ", \"empirical_stderr\": " << format_double(report.empirical_stderr)
     << ", \"closed_form_total\": " << format_double(report.closed_form_total)
     << ", \"per_k\": [";
  csv << "row,value\n";
  for (size_t k = 0; k < report.per_k.size(); ++k) {
    if (k) js << ", ";
    js << format_double(report.per_k[k]);
    csv << "k=" << (k + 1) << ',' << format_double(report.per_k[k]) << '\n';
  }
  js << "], \"per_subset_second_moment\": [";
  for (size_t i = 0; i < report.per_subset_second_moment.size(); ++i) {
    const auto& [subset, value] = report.per_subset_second_moment[i];
    if (i) js << ", ";
    js << "{\"subset\": \"" << subset.to_string()
       << "\", \"second_moment\": " << format_double(value) << "}";
  }
  js << "]}" << json_line_end();
  csv << "closed_form_total," << format_double(report.closed_form_total)
      << '\n';
  csv << "empirical_total," << format_double(report.empirical_total) << '\n';
  csv << "empirical_stderr," << format_double(report.empirical_stderr) << '\n';
  write_file(config.out_dir + "/report.json", js.str());
  write_file(config.out_dir + "/report.csv", csv.str());
  return kExitOk;
}

int run_identities(const ExperimentConfig& config) {
  FuzzOptions options;
  options.seed = config.seed;
  options.trials = static_cast<int>(config.replicates);
  options.max_n = config.max_n;
  options.parallel = config.parallel;
  const std::vector<IdentityReport> reports = fuzz_identities(options);

  std::ostringstream js, csv;
  csv << "identity,instance,holds\n";
  bool all_hold = true;
  for (const auto& report : reports) {
    js << "{\"identity\": \"" << report.identity << "\", \"instance\": \""
       << report.instance << "\", \"left\": \"" << report.left.get_str()
       << "\", \"right\": \"" << report.right.get_str() << "\", \"holds\": "
       << (report.holds ? "true" : "false") << "}" << json_line_end();
    csv << report.identity << ",\"" << report.instance << "\","
        << (report.holds ? "true" : "false") << '\n';
    all_hold = all_hold && report.holds;
  }
  write_file(config.out_dir + "/report.json", js.str());
  write_file(config.out_dir + "/report.csv", csv.str());
  return all_hold ? kExitOk : kExitDegeneracy;
}

int run_discrete(const ExperimentConfig& config) {
  if (config.n < 1 || config.n > config.d || config.d > 12)
    throw parameter_error("config: discrete mode needs 1 <= n <= d <= 12");
  // Random subspace H in R^d from the seed.
  RngStream rng(config.seed, 0);
  Matrix span(config.d, config.n);
  for (int i = 0; i < config.d; ++i)
    for (int j = 0; j < config.n; ++j)
      span(i, j) = 2.0 * rng.next_double() - 1.0;
  const KernelMatrix kernel = projection_kernel(span);

  std::ostringstream js, csv;
  csv << "m,max_deviation\n";
  js << "{\"mode\": \"discrete\", \"d\": " << config.d
     << ", \"n\": " << config.n << ", \"seed\": " << config.seed
     << ", \"orders\": [";
  double worst = 0.0;
  for (int m = 1; m <= config.n; ++m) {
    const DiscreteTheoremReport report = verify_discrete_theorem(kernel, m);
    if (m > 1) js << ", ";
    js << "{\"m\": " << m
       << ", \"max_deviation\": " << format_double(report.max_deviation)
       << "}";
    csv << m << ',' << format_double(report.max_deviation) << '\n';
    worst = std::max(worst, report.max_deviation);
  }
  js << "]}" << json_line_end();
  write_file(config.out_dir + "/report.json", js.str());
  write_file(config.out_dir + "/report.csv", csv.str());
  return worst <= 1e-8 ? kExitOk : kExitDegeneracy;
}

}  // namespace

int run(const ExperimentConfig& config) {
  try {
    validate_config(config);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  try {
    std::filesystem::create_directories(config.out_dir);
    if (config.mode == "sample") return run_sample(config);
    if (config.mode == "mean") return run_mean(config);
    if (config.mode == "variance") return run_variance(config);
    if (config.mode == "identities") return run_identities(config);
    return run_discrete(config);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const degeneracy_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegeneracy;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegeneracy;
  }
}

}  // namespace meanproj
