#include <vector>

#include "doctest.h"
#include "mfo/kernels.hpp"
#include "test_util.hpp"

using namespace mfo;

TEST_SUITE("kernels") {

TEST_CASE("dispatch reports a usable isa") {
  const auto before = kernels::active_isa();
  CHECK(kernels::set_active_isa(kernels::Isa::kScalar) == kernels::Isa::kScalar);
  CHECK(kernels::active_isa() == kernels::Isa::kScalar);
  const auto got = kernels::set_active_isa(kernels::Isa::kAvx2);
  CHECK(got == kernels::detected_isa());
  kernels::set_active_isa(before);
  MESSAGE("detected isa: " << kernels::isa_name(kernels::detected_isa()));
}

TEST_CASE("cycle_length scalar and avx2 agree") {
  if (kernels::detected_isa() != kernels::Isa::kAvx2) {
    MESSAGE("avx2 not available on this host; skipping equivalence");
    return;
  }
  Rng rng(11);
  for (std::size_t n : {2u, 3u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 100u, 150u, 200u, 257u}) {
    const auto inst = testing::random_instance(rng, n);
    for (int rep = 0; rep < 20; ++rep) {
      const auto g = testing::shuffled(rng, n);
      const auto s = kernels::scalar::cycle_length(inst->matrix_data(), inst->matrix_stride(), g);
      const auto v = kernels::avx2::cycle_length(inst->matrix_data(), inst->matrix_stride(), g);
      CHECK(s == v);
      CHECK(s == testing::reference_length(*inst, g));
    }
  }
}

TEST_CASE("filter_at_most scalar and avx2 agree") {
  Rng rng(12);
  for (std::size_t n : {1u, 5u, 8u, 13u, 16u, 64u, 100u, 199u, 200u}) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto g = testing::shuffled(rng, n);
      const auto limit = static_cast<std::int32_t>(rng.below(n + 1));
      std::vector<std::int32_t> expect;
      for (auto c : g) if (c <= limit) expect.push_back(c);

      std::vector<std::int32_t> a(n + kernels::kFilterSlack, -7);
      const auto na = kernels::scalar::filter_at_most(g, limit, a.data());
      a.resize(na);
      CHECK(a == expect);
      if (kernels::detected_isa() == kernels::Isa::kAvx2) {
        std::vector<std::int32_t> b(n + kernels::kFilterSlack, -7);
        const auto nb = kernels::avx2::filter_at_most(g, limit, b.data());
        b.resize(nb);
        CHECK(b == expect);
      }
    }
  }
}

TEST_CASE("degenerate orders") {
  const auto inst = testing::triangle();
  std::vector<std::int32_t> one{2};
  CHECK(kernels::cycle_length(inst->matrix_data(), inst->matrix_stride(), one) == 0);
  std::vector<std::int32_t> none;
  CHECK(kernels::cycle_length(inst->matrix_data(), inst->matrix_stride(), none) == 0);
}

}
