#include "latbp/types.hpp"

#include <algorithm>

namespace latbp {

IndexSet complement_of(const IndexSet& a, Index n) {
  IndexSet out;
  out.reserve(static_cast<std::size_t>(n) - a.size());
  std::size_t pos = 0;
  for (Index i = 0; i < n; ++i) {
    if (pos < a.size() && a[pos] == i) {
      ++pos;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

bool is_valid_index_set(const IndexSet& a, Index n) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] < 0 || a[k] >= n) return false;
    if (k > 0 && a[k] <= a[k - 1]) return false;
  }
  return true;
}

bool index_set_less(const IndexSet& a, const IndexSet& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

IndexSet mask_to_index_set(std::uint32_t mask, Index n) {
  IndexSet out;
  for (Index i = 0; i < n; ++i)
    if (mask & (1u << i)) out.push_back(i);
  return out;
}

}  // namespace latbp
