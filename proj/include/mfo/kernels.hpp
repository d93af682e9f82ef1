#pragma once

// Inner loops of tour evaluation, with a scalar reference path and an AVX2
// path. The active path is chosen once at startup from the host CPU; the
// scalar path is the definition of correct output.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace mfo::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

/// Best ISA supported by both the build and the running CPU.
Isa detected_isa();

/// ISA currently used by the dispatching entry points below.
Isa active_isa();

/// Forces a specific path (tests, benchmarking). Requesting an ISA the host
/// cannot run falls back to scalar; the ISA actually selected is returned.
Isa set_active_isa(Isa isa);

/// Sum of dist[order[i] * stride + order[i+1]] over consecutive entries,
/// including the closing edge order.back() -> order.front(). Labels index the
/// matrix directly.
std::int64_t cycle_length(const std::int32_t* dist, std::size_t stride,
                          std::span<const std::int32_t> order);

/// Copies every src element that is <= limit into dst, preserving order.
/// dst must have room for src.size() elements (plus 8 slack for SIMD stores).
/// Returns the number of elements written.
std::size_t filter_at_most(std::span<const std::int32_t> src, std::int32_t limit,
                           std::int32_t* dst);

namespace scalar {
std::int64_t cycle_length(const std::int32_t* dist, std::size_t stride,
                          std::span<const std::int32_t> order);
std::size_t filter_at_most(std::span<const std::int32_t> src, std::int32_t limit,
                           std::int32_t* dst);
}  // namespace scalar

namespace avx2 {
std::int64_t cycle_length(const std::int32_t* dist, std::size_t stride,
                          std::span<const std::int32_t> order);
std::size_t filter_at_most(std::span<const std::int32_t> src, std::int32_t limit,
                           std::int32_t* dst);
}  // namespace avx2

// Slack required at the end of a filter_at_most destination buffer.
inline constexpr std::size_t kFilterSlack = 8;

}  // namespace mfo::kernels
