#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "mfo/problem.hpp"
#include "mfo/rng.hpp"
#include "mfo/tsplib.hpp"

namespace mfo::testing {

inline std::filesystem::path data_dir() { return MFO_DATA_DIR; }

inline std::shared_ptr<const tsp::TspInstance> make_instance(const std::string& name,
                                                             std::vector<tsp::Point> coords) {
  return std::make_shared<const tsp::TspInstance>(name, std::move(coords));
}

inline std::shared_ptr<const tsp::TspInstance> triangle() {
  return make_instance("tri3", {{0, 0}, {3, 0}, {0, 4}});
}

inline std::shared_ptr<const tsp::TspInstance> unit_square() {
  return make_instance("sq4", {{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

inline std::shared_ptr<const tsp::TspInstance> random_instance(Rng& rng, std::size_t n,
                                                                const std::string& name = "rand") {
  std::vector<tsp::Point> pts;
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back({static_cast<double>(rng.below(1000)), static_cast<double>(rng.below(1000))});
  }
  return make_instance(name + std::to_string(n), std::move(pts));
}

inline std::shared_ptr<const tsp::TspInstance> kro(const std::string& name) {
  return std::make_shared<const tsp::TspInstance>(tsp::load_tsplib(data_dir() / (name + ".tsp")));
}

// Brute-force optimum: fixes city 1 first and enumerates the remaining
// (n-1)! orders with std::next_permutation, summing edges directly from the
// coordinates (independent of the distance matrix and the SIMD kernels).
inline std::int64_t brute_force_optimum(const tsp::TspInstance& inst) {
  const std::size_t n = inst.dimension();
  std::vector<tsp::City> rest(n - 1);
  std::iota(rest.begin(), rest.end(), 2);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  do {
    std::int64_t len = tsp::euc2d(inst.coord(1), inst.coord(rest.front())) +
                       tsp::euc2d(inst.coord(rest.back()), inst.coord(1));
    for (std::size_t i = 0; i + 1 < rest.size(); ++i) len += tsp::euc2d(inst.coord(rest[i]), inst.coord(rest[i + 1]));
    best = std::min(best, len);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return best;
}

// Closed tour length straight from coordinates.
inline std::int64_t reference_length(const tsp::TspInstance& inst, const std::vector<tsp::City>& tour) {
  std::int64_t len = 0;
  for (std::size_t i = 0; i < tour.size(); ++i) {
    len += tsp::euc2d(inst.coord(tour[i]), inst.coord(tour[(i + 1) % tour.size()]));
  }
  return len;
}

inline Genome shuffled(Rng& rng, std::size_t n) {
  Genome g(n);
  std::iota(g.begin(), g.end(), 1);
  for (std::size_t i = n; i > 1; --i) std::swap(g[i - 1], g[rng.below(i)]);
  return g;
}

}  // namespace mfo::testing
