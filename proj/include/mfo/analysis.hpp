#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mfo/run_results.hpp"
#include "mfo/tsplib.hpp"

namespace mfo::analysis {

/// Dense row-major square matrix of reals.
struct Matrix {
  std::size_t size = 0;
  std::vector<double> values;

  double operator()(std::size_t i, std::size_t j) const { return values[i * size + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values[i * size + j]; }
};

/// Element-wise mean of the ledgers (average episodes per run).
/// Throws AnalysisError on an empty list or mismatched sizes.
Matrix aggregate_transfer(std::span<const TransferLedger> ledgers);

struct PairIntensity {
  std::size_t a = 0;  // a < b
  std::size_t b = 0;
  double intensity = 0.0;  // m(a, b) + m(b, a)
};

/// Every unordered off-diagonal pair with both transfer directions summed,
/// strongest first (ties by (a, b) order).
std::vector<PairIntensity> ranked_pairs(const Matrix& transfer);

struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double best = 0.0;    // minimum
  double stddev = 0.0;  // sample standard deviation; 0 when n < 2
};

SampleSummary summarize(std::span<const double> values);

struct RankSumResult {
  double u = 0.0;  // rank sum of `a` minus n_a(n_a+1)/2
  double z = 0.0;
  double p = 0.5;  // one-sided: a stochastically smaller than b
};

/// Two-sample Wilcoxon rank-sum (Mann-Whitney) test with midranks, tie-corrected
/// normal approximation and a continuity correction of 0.5 toward zero.
/// Identical pooled values give z = 0, p = 0.5. Requires both samples to
/// have at least two values (AnalysisError otherwise).
RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b);

/// One-sided critical value at 95 %.
inline constexpr double kCriticalZ = -1.64;

inline bool significant(const RankSumResult& r) { return r.z < kCriticalZ; }

/// Standard normal CDF.
double normal_cdf(double z);

/// Percentage of undirected edges the two tours share once both are restricted
/// to the nodes the instances have in common (matched by coordinate). The
/// restricted tours visit the same node set, so they have the same edge count;
/// 0 when fewer than two nodes are shared.
double best_solution_overlap(const tsp::TspInstance& a, const tsp::Tour& tour_a,
                             const tsp::TspInstance& b, const tsp::Tour& tour_b);

}  // namespace mfo::analysis
