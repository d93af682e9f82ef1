#include "mfo/kernels.hpp"

#include <atomic>

namespace mfo::kernels {
namespace {

bool host_has_avx2() {
#if defined(MFO_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

Isa detected_isa() { return host_has_avx2() ? Isa::kAvx2 : Isa::kScalar; }

Isa active_isa() { return active().load(std::memory_order_relaxed); }

Isa set_active_isa(Isa isa) {
  if (isa == Isa::kAvx2 && !host_has_avx2()) isa = Isa::kScalar;
  active().store(isa, std::memory_order_relaxed);
  return isa;
}

std::int64_t cycle_length(const std::int32_t* dist, std::size_t stride,
                          std::span<const std::int32_t> order) {
#if defined(MFO_HAVE_AVX2_TU)
  if (active_isa() == Isa::kAvx2) return avx2::cycle_length(dist, stride, order);
#endif
  return scalar::cycle_length(dist, stride, order);
}

std::size_t filter_at_most(std::span<const std::int32_t> src, std::int32_t limit,
                           std::int32_t* dst) {
#if defined(MFO_HAVE_AVX2_TU)
  if (active_isa() == Isa::kAvx2) return avx2::filter_at_most(src, limit, dst);
#endif
  return scalar::filter_at_most(src, limit, dst);
}

}  // namespace mfo::kernels
