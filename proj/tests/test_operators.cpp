#include <set>
#include <vector>

#include "doctest.h"
#include "mfo/errors.hpp"
#include "mfo/operators.hpp"
#include "test_util.hpp"

using namespace mfo;
using namespace mfo::ops;
using tsp::City;

TEST_SUITE("operators") {

TEST_CASE("order crossover example") {
  const std::vector<City> p1{1, 2, 3, 4, 5, 6};
  const std::vector<City> p2{6, 5, 4, 3, 2, 1};
  CHECK(order_crossover(p1, p2, {2, 3}) == std::vector<City>{6, 5, 3, 4, 2, 1});
}

TEST_CASE("order crossover boundaries") {
  Rng rng(2);
  const auto g = testing::shuffled(rng, 9);
  CHECK(order_crossover(g, g, {2, 6}) == g);
  const auto h = testing::shuffled(rng, 9);
  CHECK(order_crossover(g, h, {0, 8}) == g);
  CHECK_THROWS_AS(order_crossover(g, std::vector<City>{1, 2, 3}, {0, 1}), OperatorError);
  CHECK_THROWS_AS(order_crossover(g, h, {5, 2}), OperatorError);
  CHECK_THROWS_AS(order_crossover(g, h, {0, 9}), OperatorError);
}

TEST_CASE("order crossover keeps the segment and p2's relative order") {
  Rng rng(4);
  Genome child;
  std::vector<std::uint8_t> seen;
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 2 + rng.below(40);
    const auto p1 = testing::shuffled(rng, n);
    const auto p2 = testing::shuffled(rng, n);
    const auto cuts = random_cuts(rng, n);
    REQUIRE(cuts.lo < cuts.hi);
    const auto c = order_crossover(p1, p2, cuts);
    order_crossover_into(p1, p2, cuts, child, seen);
    CHECK(child == c);
    CHECK(tsp::is_permutation(c));
    for (std::size_t i = cuts.lo; i <= cuts.hi; ++i) CHECK(c[i] == p1[i]);
    // Outside the segment, read from hi+1 cyclically, the child follows p2's
    // cyclic order starting after hi.
    std::set<City> seg(p1.begin() + static_cast<std::ptrdiff_t>(cuts.lo),
                       p1.begin() + static_cast<std::ptrdiff_t>(cuts.hi) + 1);
    std::vector<City> expect;
    for (std::size_t s = 1; s <= n; ++s) {
      const City v = p2[(cuts.hi + s) % n];
      if (!seg.count(v)) expect.push_back(v);
    }
    std::vector<City> got;
    for (std::size_t s = 1; s <= n - seg.size(); ++s) got.push_back(c[(cuts.hi + s) % n]);
    CHECK(got == expect);
  }
}

TEST_CASE("two-opt examples") {
  CHECK(two_opt_move(std::vector<City>{1, 2, 3, 4, 5}, {1, 3}) == std::vector<City>{1, 4, 3, 2, 5});
  CHECK(two_opt_move(std::vector<City>{1, 2, 3, 4, 5}, {0, 4}) == std::vector<City>{5, 4, 3, 2, 1});
  CHECK(two_opt_move(std::vector<City>{1, 2}, {0, 1}) == std::vector<City>{2, 1});
  CHECK(two_opt_move(std::vector<City>{1, 2, 3}, {1, 1}) == std::vector<City>{1, 2, 3});
  CHECK_THROWS_AS(two_opt_move(std::vector<City>{1, 2, 3}, {1, 3}), OperatorError);
}

TEST_CASE("two-opt delta matches full re-evaluation") {
  Rng rng(8);
  const auto inst = testing::kro("kroA100");
  for (int trial = 0; trial < 3000; ++trial) {
    const auto g = testing::shuffled(rng, 100);
    const auto cuts = random_cuts(rng, 100);
    const auto moved = two_opt_move(g, cuts);
    CHECK(tsp::is_permutation(moved));
    CHECK(tour_length(*inst, moved) - tour_length(*inst, g) == two_opt_delta(*inst, g, cuts));
  }
  for (std::size_t n : {3u, 4u, 5u}) {
    const auto small = testing::random_instance(rng, n);
    for (int trial = 0; trial < 100; ++trial) {
      const auto g = testing::shuffled(rng, n);
      const auto cuts = random_cuts(rng, n);
      CHECK(tour_length(*small, two_opt_move(g, cuts)) - tour_length(*small, g) ==
            two_opt_delta(*small, g, cuts));
    }
  }
}

TEST_CASE("random permutations and cuts") {
  Rng rng(9);
  std::vector<int> first(5, 0);
  for (int trial = 0; trial < 5000; ++trial) {
    const auto g = random_permutation(rng, 5);
    CHECK(tsp::is_permutation(g));
    ++first[static_cast<std::size_t>(g[0] - 1)];
  }
  for (int c : first) CHECK(c > 850);  // expected 1000 each
  for (int trial = 0; trial < 1000; ++trial) {
    const auto c = random_cuts(rng, 2);
    CHECK(c == CutPair{0, 1});
  }
}

}
