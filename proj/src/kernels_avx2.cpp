#include <immintrin.h>

#include <array>

#include "mfo/kernels.hpp"

namespace mfo::kernels::avx2 {
namespace {

// Left-pack permutation for every 8-bit keep mask.
struct CompressTable {
  alignas(32) std::array<std::array<std::int32_t, 8>, 256> lanes{};

  CompressTable() {
    for (int mask = 0; mask < 256; ++mask) {
      int out = 0;
      for (int lane = 0; lane < 8; ++lane) {
        if (mask & (1 << lane)) lanes[mask][out++] = lane;
      }
      for (; out < 8; ++out) lanes[mask][out] = 0;
    }
  }
};

const CompressTable kCompress;

}  // namespace

std::int64_t cycle_length(const std::int32_t* dist, std::size_t stride,
                          std::span<const std::int32_t> order) {
  const std::size_t n = order.size();
  if (n < 2) return 0;
  const std::int32_t* o = order.data();
  const __m256i vstride = _mm256_set1_epi32(static_cast<std::int32_t>(stride));
  __m256i acc_lo = _mm256_setzero_si256();
  __m256i acc_hi = _mm256_setzero_si256();

  std::size_t i = 0;
  // Edges (i, i+1) for i in [0, n-1); each block reads order[i .. i+8].
  for (; i + 8 < n; i += 8) {
    const __m256i from = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(o + i));
    const __m256i to = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(o + i + 1));
    const __m256i idx = _mm256_add_epi32(_mm256_mullo_epi32(from, vstride), to);
    const __m256i d = _mm256_i32gather_epi32(dist, idx, 4);
    acc_lo = _mm256_add_epi64(acc_lo, _mm256_cvtepi32_epi64(_mm256_castsi256_si128(d)));
    acc_hi = _mm256_add_epi64(acc_hi, _mm256_cvtepi32_epi64(_mm256_extracti128_si256(d, 1)));
  }

  alignas(32) std::array<std::int64_t, 4> parts{};
  _mm256_store_si256(reinterpret_cast<__m256i*>(parts.data()), _mm256_add_epi64(acc_lo, acc_hi));
  std::int64_t total = parts[0] + parts[1] + parts[2] + parts[3];

  for (; i + 1 < n; ++i) {
    total += dist[static_cast<std::size_t>(o[i]) * stride + static_cast<std::size_t>(o[i + 1])];
  }
  total += dist[static_cast<std::size_t>(o[n - 1]) * stride + static_cast<std::size_t>(o[0])];
  return total;
}

std::size_t filter_at_most(std::span<const std::int32_t> src, std::int32_t limit,
                           std::int32_t* dst) {
  const std::size_t n = src.size();
  const std::int32_t* s = src.data();
  const __m256i vlimit = _mm256_set1_epi32(limit);
  std::size_t out = 0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(s + i));
    const __m256i over = _mm256_cmpgt_epi32(v, vlimit);
    const auto keep = static_cast<unsigned>(~_mm256_movemask_ps(_mm256_castsi256_ps(over))) & 0xFFu;
    const __m256i perm =
        _mm256_load_si256(reinterpret_cast<const __m256i*>(kCompress.lanes[keep].data()));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + out), _mm256_permutevar8x32_epi32(v, perm));
    out += static_cast<std::size_t>(__builtin_popcount(keep));
  }
  for (; i < n; ++i) {
    if (s[i] <= limit) dst[out++] = s[i];
  }
  return out;
}

}  // namespace mfo::kernels::avx2
