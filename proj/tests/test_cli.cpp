#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "meanproj/cli.hpp"
#include "meanproj/errors.hpp"

using namespace meanproj;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  return lines;
}

ExperimentConfig mean_config(const std::string& out_dir) {
  ExperimentConfig config;
  config.mode = "mean";
  config.n = 3;
  config.m = 2;
  config.replicates = 400;
  config.seed = 71;
  config.out_dir = out_dir;
  config.functions = {{"monomial", 2, {}}, {"exp", 0, {}}};
  return config;
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& name)
      : path(std::filesystem::temp_directory_path() / name) {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("config serialization round-trips") {
  ExperimentConfig config = mean_config("/tmp/unused");
  config.space.weight = "chebyshev";
  config.space.quadrature = 64;
  config.parallel = false;
  const ExperimentConfig back = parse_config(serialize_config(config));
  CHECK(back.mode == config.mode);
  CHECK(back.n == config.n);
  CHECK(back.m == config.m);
  CHECK(back.replicates == config.replicates);
  CHECK(back.seed == config.seed);
  CHECK(back.space.weight == "chebyshev");
  CHECK(back.space.quadrature == 64);
  CHECK(back.parallel == false);
  REQUIRE(back.functions.size() == 2);
  CHECK(back.functions[0].name == "monomial");
  CHECK(back.functions[0].k == 2);
  CHECK(back.functions[1].name == "exp");
  CHECK(serialize_config(back) == serialize_config(config));
}

TEST_CASE("parse_config fills defaults from a minimal document") {
  const ExperimentConfig config = parse_config(R"({"mode": "identities"})");
  CHECK(config.mode == "identities");
  CHECK(config.n == 3);
  CHECK(config.space.kind == "interval");
  CHECK(config.space.quadrature == 128);
  CHECK(config.max_n == 6);
}

TEST_CASE("parse_config rejects malformed json") {
  CHECK_THROWS(parse_config("{not json"));
}

TEST_CASE("validate_config rejects inconsistent parameters") {
  ExperimentConfig config = mean_config("/tmp/unused");
  config.m = 4;  // m > n
  CHECK_THROWS_AS(validate_config(config), parameter_error);
  config = mean_config("/tmp/unused");
  config.functions.pop_back();  // count mismatch with m = 2
  CHECK_THROWS_AS(validate_config(config), parameter_error);
  config = mean_config("/tmp/unused");
  config.mode = "frobnicate";
  CHECK_THROWS_AS(validate_config(config), parameter_error);
  config = mean_config("/tmp/unused");
  config.functions[0].name = "sinh";
  CHECK_THROWS_AS(validate_config(config), parameter_error);
}

TEST_CASE("build_functions expands names and coefficient lists") {
  ExperimentConfig config = mean_config("/tmp/unused");
  config.functions = {{"runge", 0, {}}, {"coefficients", 0, {1.0, 0.0, -2.0}}};
  const OrthonormalBasis basis = build_basis(config);
  const auto fs = build_functions(config, basis);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0](0.5) == doctest::Approx(1.0 / (1.0 + 25.0 * 0.25)));
  CHECK(fs[1](0.3) == doctest::Approx(basis.evaluate(1, 0.3) -
                                      2.0 * basis.evaluate(3, 0.3)));
}

TEST_CASE("mean mode writes both reports and is byte-deterministic") {
  TempDir first("meanproj_cli_mean_a");
  TempDir second("meanproj_cli_mean_b");
  CHECK(run(mean_config(first.path.string())) == kExitOk);
  CHECK(run(mean_config(second.path.string())) == kExitOk);
  const std::string json_a = slurp(first.path / "report.json");
  const std::string json_b = slurp(second.path / "report.json");
  CHECK(json_a == json_b);
  const std::string csv = slurp(first.path / "report.csv");
  // header plus one row per 2-subset of {1,2,3}
  CHECK(count_lines(csv) == 4);
}

TEST_CASE("sample mode emits one record per replicate") {
  TempDir dir("meanproj_cli_sample");
  ExperimentConfig config;
  config.mode = "sample";
  config.n = 2;
  config.replicates = 25;
  config.seed = 72;
  config.out_dir = dir.path.string();
  CHECK(run(config) == kExitOk);
  const std::string csv = slurp(dir.path / "report.csv");
  CHECK(count_lines(csv) == 26);
}

TEST_CASE("variance mode reports per-k rows and matching totals") {
  TempDir dir("meanproj_cli_variance");
  ExperimentConfig config = mean_config(dir.path.string());
  config.mode = "variance";
  config.replicates = 300;
  CHECK(run(config) == kExitOk);
  const std::string json = slurp(dir.path / "report.json");
  CHECK(json.find("closed_form_total") != std::string::npos);
  CHECK(json.find("empirical_total") != std::string::npos);
  const std::string csv = slurp(dir.path / "report.csv");
  // header + one row per k = 1..m + the three totals
  CHECK(count_lines(csv) == 6);
}

TEST_CASE("identities mode succeeds and records every check") {
  TempDir dir("meanproj_cli_identities");
  ExperimentConfig config;
  config.mode = "identities";
  config.replicates = 20;  // trials
  config.seed = 73;
  config.max_n = 4;
  config.out_dir = dir.path.string();
  CHECK(run(config) == kExitOk);
  const std::string csv = slurp(dir.path / "report.csv");
  CHECK(count_lines(csv) == 81);  // header + 4 identities x 20 trials
}

TEST_CASE("discrete mode passes for a random subspace") {
  TempDir dir("meanproj_cli_discrete");
  ExperimentConfig config;
  config.mode = "discrete";
  config.d = 5;
  config.n = 2;
  config.seed = 74;
  config.out_dir = dir.path.string();
  CHECK(run(config) == kExitOk);
}

TEST_CASE("run returns the validation exit code on a bad configuration") {
  ExperimentConfig config = mean_config("/tmp/unused");
  config.m = 9;
  CHECK(run(config) == kExitValidation);
}

TEST_CASE("format_double survives a parse round-trip") {
  for (double v : {1.0 / 3.0, 16.0 / 45.0, -2.5e-17, 0.0, 123456.789}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}
