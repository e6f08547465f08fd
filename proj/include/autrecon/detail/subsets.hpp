#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace autrecon::detail {

/// Visits the nonzero submasks of `mask` ordered by cardinality (ascending, or
/// descending when `largest_first`), then lexicographically by sorted member
/// list. Stops early when `visit` returns true; returns whether it did.
template <class Visit>
bool for_each_submask(std::uint64_t mask, bool largest_first, Visit&& visit) {
  std::vector<std::uint64_t> bits;
  for (std::uint64_t m = mask; m != 0; m &= m - 1) bits.push_back(m & (~m + 1));
  const std::size_t n = bits.size();
  for (std::size_t step = 1; step <= n; ++step) {
    const std::size_t k = largest_first ? n + 1 - step : step;
    // Lexicographic combinations of positions: idx[0] < idx[1] < ... < idx[k-1].
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::uint64_t sub = 0;
      for (const auto i : idx) sub |= bits[i];
      if (visit(sub)) return true;
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return false;
}

}  // namespace autrecon::detail
