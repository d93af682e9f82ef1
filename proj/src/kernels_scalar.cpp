#include "mfo/kernels.hpp"

namespace mfo::kernels::scalar {

std::int64_t cycle_length(const std::int32_t* dist, std::size_t stride,
                          std::span<const std::int32_t> order) {
  const std::size_t n = order.size();
  if (n < 2) return 0;
  std::int64_t total = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    total += dist[static_cast<std::size_t>(order[i]) * stride +
                  static_cast<std::size_t>(order[i + 1])];
  }
  total += dist[static_cast<std::size_t>(order[n - 1]) * stride +
                static_cast<std::size_t>(order[0])];
  return total;
}

std::size_t filter_at_most(std::span<const std::int32_t> src, std::int32_t limit,
                           std::int32_t* dst) {
  std::size_t out = 0;
  for (std::int32_t v : src) {
    if (v <= limit) dst[out++] = v;
  }
  return out;
}

}  // namespace mfo::kernels::scalar
