// Times the serial reference path against the OpenMP path on the two hot
// kernels: the Monte Carlo minor-statistics loop and the identity fuzzer.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "meanproj/estimator.hpp"
#include "meanproj/minor_identities.hpp"

using namespace meanproj;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

}  // namespace

int main() {
  const GroundSpace space =
      GroundSpace::interval(-1.0, 1.0, WeightFamily::kLebesgue, 128);
  const OrthonormalBasis basis(space, 3, BasisFamily::kLegendre);
  const std::vector<FunctionHandle> fs = {
      [](double x) { return x * x; }, [](double x) { return std::exp(x); }};

  std::printf("%-28s %12s %12s %8s\n", "kernel", "serial [s]", "openmp [s]",
              "speedup");

  {
    MonteCarloOptions options;
    options.replicates = 50000;
    options.seed = 7;
    options.policy = ExecPolicy::kSerial;
    auto t0 = std::chrono::steady_clock::now();
    const MomentReport serial = estimate_mean_minors(basis, fs, 2, options);
    const double serial_s = seconds_since(t0);

    options.policy = ExecPolicy::kParallel;
    t0 = std::chrono::steady_clock::now();
    const MomentReport parallel = estimate_mean_minors(basis, fs, 2, options);
    const double parallel_s = seconds_since(t0);

    bool identical = serial.rows.size() == parallel.rows.size();
    for (size_t i = 0; identical && i < serial.rows.size(); ++i)
      identical = serial.rows[i].mean == parallel.rows[i].mean &&
                  serial.rows[i].variance == parallel.rows[i].variance;
    std::printf("%-28s %12.3f %12.3f %7.2fx  (outputs %s)\n",
                "mean_minors N=50000", serial_s, parallel_s,
                serial_s / parallel_s, identical ? "identical" : "DIFFER");
  }

  {
    FuzzOptions options;
    options.seed = 42;
    options.trials = 300;
    options.max_n = 6;
    options.parallel = false;
    auto t0 = std::chrono::steady_clock::now();
    const auto serial = fuzz_identities(options);
    const double serial_s = seconds_since(t0);

    options.parallel = true;
    t0 = std::chrono::steady_clock::now();
    const auto parallel = fuzz_identities(options);
    const double parallel_s = seconds_since(t0);

    bool identical = serial.size() == parallel.size();
    for (size_t i = 0; identical && i < serial.size(); ++i)
      identical = serial[i].left == parallel[i].left &&
                  serial[i].right == parallel[i].right;
    std::printf("%-28s %12.3f %12.3f %7.2fx  (outputs %s)\n",
                "identity_fuzz trials=300", serial_s, parallel_s,
                serial_s / parallel_s, identical ? "identical" : "DIFFER");
  }
  return 0;
}
