#include "meanproj/index_set.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace meanproj {

IndexSet::IndexSet(std::vector<int> indices, int universe)
    : indices_(std::move(indices)), universe_(universe) {
  if (universe_ < 0) throw dimension_error("IndexSet: negative universe");
  for (size_t k = 0; k < indices_.size(); ++k) {
    if (indices_[k] < 1 || indices_[k] > universe_)
      throw dimension_error("IndexSet: index out of range [1, universe]");
    if (k > 0 && indices_[k] <= indices_[k - 1])
      throw dimension_error("IndexSet: indices must be strictly increasing");
  }
}

IndexSet IndexSet::full(int universe) {
  std::vector<int> v(static_cast<size_t>(universe));
  std::iota(v.begin(), v.end(), 1);
  return IndexSet(std::move(v), universe);
}

bool IndexSet::contains(int i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

long IndexSet::index_sum() const {
  return std::accumulate(indices_.begin(), indices_.end(), 0L);
}

IndexSet IndexSet::complement() const {
  std::vector<int> out;
  out.reserve(static_cast<size_t>(universe_) - indices_.size());
  for (int i = 1; i <= universe_; ++i)
    if (!contains(i)) out.push_back(i);
  return IndexSet(std::move(out), universe_);
}

std::string IndexSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (size_t k = 0; k < indices_.size(); ++k) {
    if (k) os << ',';
    os << indices_[k];
  }
  os << '}';
  return os.str();
}

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long result = 1;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

std::vector<IndexSet> all_subsets(int universe, int m) {
  std::vector<IndexSet> out;
  if (m < 0 || m > universe) return out;
  out.reserve(static_cast<size_t>(binomial(universe, m)));
  std::vector<int> current(static_cast<size_t>(m));
  std::iota(current.begin(), current.end(), 1);
  while (true) {
    out.emplace_back(current, universe);
    if (m == 0) break;
    // next lexicographic m-combination
    int pos = m - 1;
    while (pos >= 0 && current[static_cast<size_t>(pos)] == universe - (m - 1 - pos))
      --pos;
    if (pos < 0) break;
    ++current[static_cast<size_t>(pos)];
    for (int q = pos + 1; q < m; ++q)
      current[static_cast<size_t>(q)] = current[static_cast<size_t>(q - 1)] + 1;
  }
  return out;
}

IndexSet IndexSet::from_rank(int universe, int m, long rank) {
  std::vector<int> out;
  out.reserve(static_cast<size_t>(m));
  int next = 1;
  for (int k = m; k >= 1; --k) {
    while (true) {
      long block = binomial(universe - next, k - 1);
      if (rank < block) break;
      rank -= block;
      ++next;
    }
    out.push_back(next);
    ++next;
  }
  return IndexSet(std::move(out), universe);
}

}  // namespace meanproj
