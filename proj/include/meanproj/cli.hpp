#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "meanproj/estimator.hpp"
#include "meanproj/function_space.hpp"

namespace meanproj {

struct SpaceSpec {
  std::string kind = "interval";  // interval | discrete
  double a = -1.0;
  double b = 1.0;
  std::string weight = "lebesgue";  // lebesgue | chebyshev | gaussian
  int quadrature = 128;
  std::vector<double> atoms;
  std::vector<double> atom_weights;
};

// A named built-in test function, or a coefficient list in the basis.
struct FunctionSpec {
  std::string name;  // monomial | exp | runge | coefficients
  int k = 0;
  std::vector<double> values;
};

struct ExperimentConfig {
  std::string mode;  // sample | mean | variance | identities | discrete
  SpaceSpec space;
  std::string family = "legendre";
  int n = 3;
  std::vector<FunctionSpec> functions;
  int m = 1;
  long replicates = 1000;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  bool parallel = true;
  // identities mode
  int max_n = 6;
  // discrete mode
  int d = 6;
};

// Exit codes used by run(): 0 success, 2 validation error, 3 numerical
// degeneracy or IO failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitDegeneracy = 3;

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// Canonical serialization; parse(serialize(c)) is semantically identical to c.
std::string serialize_config(const ExperimentConfig& config);

// Throws parameter_error on an invalid configuration.
void validate_config(const ExperimentConfig& config);

GroundSpace build_space(const SpaceSpec& spec);
OrthonormalBasis build_basis(const ExperimentConfig& config);
std::vector<FunctionHandle> build_functions(const ExperimentConfig& config,
                                            const OrthonormalBasis& basis);

// Dispatches to the matching module, writes <out>/report.json and
// <out>/report.csv, and returns the exit status. Output bytes depend only on
// (config, seed).
int run(const ExperimentConfig& config);

// 17-significant-digit float formatting used by every report writer.
std::string format_double(double v);

}  // namespace meanproj
