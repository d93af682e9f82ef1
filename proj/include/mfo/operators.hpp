#pragma once

// Permutation variation operators acting on unified genomes.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mfo/problem.hpp"
#include "mfo/rng.hpp"
#include "mfo/tsplib.hpp"

namespace mfo::ops {

/// Inclusive segment [lo, hi] of 0-based positions.
struct CutPair {
  std::size_t lo = 0;
  std::size_t hi = 0;
  friend bool operator==(const CutPair&, const CutPair&) = default;
};

/// Uniformly random permutation of {1..n} (Fisher-Yates).
Genome random_permutation(Rng& rng, std::size_t n);

/// Two distinct positions in [0, n), uniform without replacement, ordered.
CutPair random_cuts(Rng& rng, std::size_t n);

/// Davis order crossover. The child keeps p1[lo..hi] in place; the remaining
/// positions, starting after hi and wrapping, take p2's elements in p2's
/// cyclic order starting after hi, skipping those already present.
Genome order_crossover(std::span<const tsp::City> p1, std::span<const tsp::City> p2, CutPair cuts);

/// Allocation-free form for the engines. `child` is resized to p1.size();
/// `seen` is scratch space, resized as needed.
void order_crossover_into(std::span<const tsp::City> p1, std::span<const tsp::City> p2,
                          CutPair cuts, Genome& child, std::vector<std::uint8_t>& seen);

/// One 2-opt move: positions lo..hi reversed, everything else unchanged.
/// lo == hi returns the input unchanged.
Genome two_opt_move(std::span<const tsp::City> tour, CutPair cuts);

void apply_two_opt(std::span<tsp::City> tour, CutPair cuts);

/// Change in closed tour length caused by apply_two_opt(tour, cuts), computed
/// from the four edges at the segment ends.
std::int64_t two_opt_delta(const tsp::TspInstance& instance, std::span<const tsp::City> tour,
                           CutPair cuts);

}  // namespace mfo::ops
