#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mfo/analysis.hpp"
#include "mfo/errors.hpp"

namespace mfo::analysis {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw AnalysisError("rank-sum test needs at least two observations per sample");
  }
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  const std::size_t total = n + m;

  struct Obs {
    double value;
    bool from_a;
  };
  std::vector<Obs> pooled;
  pooled.reserve(total);
  for (double v : a) pooled.push_back({v, true});
  for (double v : b) pooled.push_back({v, false});
  std::stable_sort(pooled.begin(), pooled.end(),
                   [](const Obs& x, const Obs& y) { return x.value < y.value; });

  double rank_sum_a = 0.0;
  double tie_term = 0.0;  // sum over tie groups of t^3 - t
  for (std::size_t i = 0; i < total;) {
    std::size_t j = i;
    while (j < total && pooled[j].value == pooled[i].value) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    const auto t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    for (std::size_t q = i; q < j; ++q) {
      if (pooled[q].from_a) rank_sum_a += midrank;
    }
    i = j;
  }

  const auto nd = static_cast<double>(n);
  const auto md = static_cast<double>(m);
  const auto nt = static_cast<double>(total);
  RankSumResult r;
  r.u = rank_sum_a - nd * (nd + 1.0) / 2.0;
  const double mean = nd * md / 2.0;
  const double variance = nd * md / 12.0 * ((nt + 1.0) - tie_term / (nt * (nt - 1.0)));
  if (variance <= 0.0) {
    r.z = 0.0;
    r.p = 0.5;
    return r;
  }
  const double diff = r.u - mean;
  const double corrected = std::copysign(std::max(std::abs(diff) - 0.5, 0.0), diff);
  r.z = corrected / std::sqrt(variance);
  r.p = normal_cdf(r.z);
  return r;
}

}  // namespace mfo::analysis
