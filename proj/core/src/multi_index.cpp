#include "entroflow/multi_index.hpp"

#include <algorithm>
#include <limits>

#include "entroflow/errors.hpp"

namespace entroflow {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw usage_error("multi-index needs dimension >= 1");
  for (int e : entries_) {
    if (e < 0) throw usage_error("multi-index entries must be nonnegative");
    degree_ += e;
  }
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
  if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
  return std::lexicographical_compare(a.entries().begin(), a.entries().end(),
                                      b.entries().begin(), b.entries().end());
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    if (result > std::numeric_limits<std::int64_t>::max() / (n - k + i))
      throw usage_error("binomial overflow");
    result = result * (n - k + i) / i;
  }
  return result;
}

namespace {

void enumerate(int axis, int remaining, std::vector<int>& current,
               std::vector<MultiIndex>& out) {
  if (axis == static_cast<int>(current.size()) - 1) {
    for (int e = 0; e <= remaining; ++e) {
      current[static_cast<std::size_t>(axis)] = e;
      out.emplace_back(current);
    }
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    current[static_cast<std::size_t>(axis)] = e;
    enumerate(axis + 1, remaining - e, current, out);
  }
}

}  // namespace

IndexSet::IndexSet(int dimension, int max_degree)
    : dimension_(dimension), max_degree_(max_degree) {
  if (dimension < 1) throw usage_error("dimension must be >= 1");
  if (max_degree < 0) throw usage_error("max degree must be >= 0");
  binomial(max_degree + dimension, dimension);  // overflow check
  std::vector<int> current(static_cast<std::size_t>(dimension), 0);
  enumerate(0, max_degree, current, indices_);
  std::sort(indices_.begin(), indices_.end(), graded_lex_less);
  for (int i = 0; i < size(); ++i) positions_[indices_[static_cast<std::size_t>(i)].entries()] = i;
}

int IndexSet::position_of(const std::vector<int>& entries) const {
  auto it = positions_.find(entries);
  return it == positions_.end() ? -1 : it->second;
}

}  // namespace entroflow
