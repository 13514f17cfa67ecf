#pragma once

#include <stdexcept>
#include <string>

namespace meanproj {

struct dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown when a pivot falls below the singularity threshold; carries the
// offending pivot magnitude.
struct singularity_error : std::runtime_error {
  double pivot;
  explicit singularity_error(const std::string& what, double pivot_magnitude)
      : std::runtime_error(what), pivot(pivot_magnitude) {}
};

struct parameter_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct rank_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct evaluation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct degeneracy_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct enumeration_size_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct discretization_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace meanproj
