#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "meanproj/errors.hpp"

namespace meanproj {

// A strictly increasing list of 1-based indices drawn from {1,...,universe}.
// The 1-based convention keeps index sets aligned with the usual notation
// [n] = {1,...,n} for rows, columns and basis labels.
class IndexSet {
 public:
  IndexSet(std::vector<int> indices, int universe);

  // The full set {1,...,universe}.
  static IndexSet full(int universe);

  // The k-th m-subset of {1,...,universe} in lexicographic order.
  static IndexSet from_rank(int universe, int m, long rank);

  const std::vector<int>& indices() const { return indices_; }
  int universe() const { return universe_; }
  int size() const { return static_cast<int>(indices_.size()); }
  int operator[](int k) const { return indices_[static_cast<size_t>(k)]; }
  bool contains(int i) const;
  long index_sum() const;

  // Complement within the universe, in increasing order.
  IndexSet complement() const;

  bool operator==(const IndexSet& other) const {
    return universe_ == other.universe_ && indices_ == other.indices_;
  }
  bool operator<(const IndexSet& other) const {
    return indices_ < other.indices_;
  }

  std::string to_string() const;

 private:
  std::vector<int> indices_;
  int universe_;
};

// All m-subsets of {1,...,universe} in lexicographic order.
std::vector<IndexSet> all_subsets(int universe, int m);

long binomial(int n, int k);

}  // namespace meanproj
