#include "mfo/operators.hpp"

#include <algorithm>
#include <string>

#include "mfo/errors.hpp"

namespace mfo::ops {
namespace {

void check_cuts(CutPair cuts, std::size_t n) {
  if (cuts.lo > cuts.hi || cuts.hi >= n) {
    throw OperatorError("invalid cut pair (" + std::to_string(cuts.lo) + ", " +
                        std::to_string(cuts.hi) + ") for length " + std::to_string(n));
  }
}

}  // namespace

Genome random_permutation(Rng& rng, std::size_t n) {
  Genome g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = static_cast<tsp::City>(i + 1);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(g[i - 1], g[static_cast<std::size_t>(rng.below(i))]);
  }
  return g;
}

CutPair random_cuts(Rng& rng, std::size_t n) {
  if (n < 2) throw OperatorError("random cuts need at least two positions");
  const auto [lo, hi] = rng.distinct_pair(n);
  return {lo, hi};
}

void order_crossover_into(std::span<const tsp::City> p1, std::span<const tsp::City> p2,
                          CutPair cuts, Genome& child, std::vector<std::uint8_t>& seen) {
  const std::size_t n = p1.size();
  if (p2.size() != n) {
    throw OperatorError("parent lengths differ: " + std::to_string(n) + " vs " +
                        std::to_string(p2.size()));
  }
  check_cuts(cuts, n);

  tsp::City max_label = 0;
  for (tsp::City c : p1) max_label = std::max(max_label, c);
  seen.assign(static_cast<std::size_t>(max_label) + 1, 0);
  child.resize(n);

  for (std::size_t i = cuts.lo; i <= cuts.hi; ++i) {
    child[i] = p1[i];
    seen[static_cast<std::size_t>(p1[i])] = 1;
  }
  std::size_t write = (cuts.hi + 1) % n;
  std::size_t read = write;
  const std::size_t to_fill = n - (cuts.hi - cuts.lo + 1);
  for (std::size_t filled = 0; filled < to_fill; read = (read + 1) % n) {
    const tsp::City c = p2[read];
    if (static_cast<std::size_t>(c) >= seen.size()) {
      throw OperatorError("parents are not permutations of the same set");
    }
    if (seen[static_cast<std::size_t>(c)]) continue;
    seen[static_cast<std::size_t>(c)] = 1;
    child[write] = c;
    write = (write + 1) % n;
    ++filled;
  }
}

Genome order_crossover(std::span<const tsp::City> p1, std::span<const tsp::City> p2, CutPair cuts) {
  Genome child;
  std::vector<std::uint8_t> seen;
  order_crossover_into(p1, p2, cuts, child, seen);
  return child;
}

void apply_two_opt(std::span<tsp::City> tour, CutPair cuts) {
  check_cuts(cuts, tour.size());
  std::reverse(tour.begin() + static_cast<std::ptrdiff_t>(cuts.lo),
               tour.begin() + static_cast<std::ptrdiff_t>(cuts.hi) + 1);
}

Genome two_opt_move(std::span<const tsp::City> tour, CutPair cuts) {
  Genome out(tour.begin(), tour.end());
  apply_two_opt(out, cuts);
  return out;
}

std::int64_t two_opt_delta(const tsp::TspInstance& instance, std::span<const tsp::City> tour,
                           CutPair cuts) {
  const std::size_t n = tour.size();
  check_cuts(cuts, n);
  // Reversing the whole cycle, or a segment whose complement is a single
  // city, leaves the set of undirected edges unchanged.
  if (cuts.lo == cuts.hi || cuts.hi - cuts.lo + 1 >= n - 1) return 0;
  const tsp::City before = tour[(cuts.lo + n - 1) % n];
  const tsp::City first = tour[cuts.lo];
  const tsp::City last = tour[cuts.hi];
  const tsp::City after = tour[(cuts.hi + 1) % n];
  return static_cast<std::int64_t>(instance.distance(before, last)) + instance.distance(first, after) -
         instance.distance(before, first) - instance.distance(last, after);
}

}  // namespace mfo::ops
