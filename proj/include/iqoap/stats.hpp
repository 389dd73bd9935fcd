#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace iqoap {

/// Nearest-rank percentile: the ceil(p/100 * N)-th smallest sample, the
/// smallest one for p == 0. Median is percentile 50 (lower median for even N).
template <typename T>
T nearest_rank(std::vector<T> values, double percentile) {
  if (values.empty()) throw std::invalid_argument("nearest_rank: no samples");
  if (percentile < 0.0 || percentile > 100.0) throw std::invalid_argument("nearest_rank: percentile out of [0, 100]");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(percentile / 100.0 * n - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

}  // namespace iqoap
