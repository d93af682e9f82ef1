#pragma once

#include <cstdint>
#include <cstddef>
#include <random>
#include <utility>

namespace mfo {

/// Seeded random stream shared by the engines.
///
/// std::uniform_int_distribution is implementation-defined, so bounded draws
/// are done here on top of the raw 64-bit engine output. That keeps seeded
/// runs bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) {
    __uint128_t m = static_cast<__uint128_t>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<__uint128_t>(engine_()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform real in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Two distinct positions in [0, n), returned ordered (first < second).
  std::pair<std::size_t, std::size_t> distinct_pair(std::size_t n) {
    auto a = static_cast<std::size_t>(below(n));
    auto b = static_cast<std::size_t>(below(n - 1));
    if (b >= a) ++b;
    if (a > b) std::swap(a, b);
    return {a, b};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mfo
