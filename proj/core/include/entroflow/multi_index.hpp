#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace entroflow {

// Multi-index k = (k_1,...,k_d) of nonnegative integers, the exponent
// tuple of one tensor basis function.
class MultiIndex {
public:
  MultiIndex() : MultiIndex(std::vector<int>{0}) {}
  explicit MultiIndex(std::vector<int> entries);

  int dimension() const noexcept { return static_cast<int>(entries_.size()); }
  int total_degree() const noexcept { return degree_; }
  int operator[](int axis) const { return entries_[static_cast<std::size_t>(axis)]; }
  const std::vector<int>& entries() const noexcept { return entries_; }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.entries_ == b.entries_;
  }

private:
  std::vector<int> entries_;
  int degree_ = 0;
};

// Orders first by total degree, then lexicographically within a degree.
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

// All multi-indices in d variables with total degree <= N, enumerated in
// graded lexicographic order.  Index 0 is always the zero index.  The
// enumeration is the storage layout of every coefficient vector in the
// library, so it must never change.
class IndexSet {
public:
  IndexSet(int dimension, int max_degree);

  int dimension() const noexcept { return dimension_; }
  int max_degree() const noexcept { return max_degree_; }
  int size() const noexcept { return static_cast<int>(indices_.size()); }
  const MultiIndex& at(int position) const { return indices_[static_cast<std::size_t>(position)]; }
  const std::vector<MultiIndex>& all() const noexcept { return indices_; }

  // Position of k in the enumeration, or -1 if |k| > N or k has the
  // wrong dimension.
  int position_of(const std::vector<int>& entries) const;

private:
  int dimension_;
  int max_degree_;
  std::vector<MultiIndex> indices_;
  std::map<std::vector<int>, int> positions_;
};

// Binomial coefficient C(n, k) as a 64-bit count; the basis size
// C(N + d, d) stays tiny at desk scale but overflow is still checked.
std::int64_t binomial(int n, int k);

}  // namespace entroflow
